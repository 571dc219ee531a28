//! Finitely presented graded `D`-modules.
//!
//! Text format, one item per line, `#` starts a comment:
//!
//! ```text
//! gen g 1
//! rel 2 : g*2*x[1]
//! ```
//!
//! A `window <N>` line marks a presentation whose relation family was cut
//! off at degree `N`; answers are then only meaningful up to `N`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlin::{quotient_structure, AbelianGroupStructure, Mat, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub degree: usize,
}

/// A relation of degree `e`: `Σ_i c_i x^[e - d_i] g_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<R: Ring> {
    pub degree: usize,
    /// `(generator index, c_i)`, sorted by index, nonzero only.
    pub terms: Vec<(usize, R::Elem)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPPresentation<R: Ring> {
    ring: R,
    generators: Vec<Generator>,
    relations: Vec<Relation<R>>,
    window: Option<usize>,
}

impl<R: Ring> DPPresentation<R> {
    pub fn new(ring: &R) -> Self {
        DPPresentation {
            ring: ring.clone(),
            generators: Vec::new(),
            relations: Vec::new(),
            window: None,
        }
    }

    /// The free module `⊕ D[d]` on generators of the given degrees.
    pub fn free(ring: &R, degrees: &[usize]) -> Self {
        let mut p = Self::new(ring);
        for (i, &d) in degrees.iter().enumerate() {
            p.add_generator(&format!("g{i}"), d).unwrap();
        }
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }
    pub fn relations(&self) -> &[Relation<R>] {
        &self.relations
    }
    pub fn window(&self) -> Option<usize> {
        self.window
    }
    pub fn set_window(&mut self, n: Option<usize>) {
        self.window = n;
    }

    pub fn add_generator(&mut self, id: &str, degree: usize) -> Result<usize> {
        if id.is_empty() || id.contains(|c: char| c.is_whitespace() || c == '*' || c == ':') {
            return Err(Error::invalid(format!("bad generator id '{id}'")));
        }
        if self.generators.iter().any(|g| g.id == id) {
            return Err(Error::invalid(format!("duplicate generator '{id}'")));
        }
        self.generators.push(Generator {
            id: id.to_string(),
            degree,
        });
        Ok(self.generators.len() - 1)
    }

    /// Adds `Σ c_i x^[e - d_i] g_i`; every term needs `d_i ≤ e`.
    pub fn add_relation(&mut self, degree: usize, terms: &[(usize, R::Elem)]) -> Result<()> {
        let r = &self.ring;
        let mut acc: Vec<(usize, R::Elem)> = Vec::new();
        for (g, c) in terms {
            let gen = self
                .generators
                .get(*g)
                .ok_or_else(|| Error::invalid(format!("no generator {g}")))?;
            if r.is_zero(c) {
                continue;
            }
            if gen.degree > degree {
                return Err(Error::invalid(format!(
                    "relation of degree {degree} cannot involve generator '{}' of degree {}",
                    gen.id, gen.degree
                )));
            }
            match acc.iter_mut().find(|(h, _)| h == g) {
                Some((_, v)) => *v = r.add(v, c),
                None => acc.push((*g, c.clone())),
            }
        }
        acc.retain(|(_, c)| !r.is_zero(c));
        acc.sort_by_key(|(g, _)| *g);
        self.relations.push(Relation { degree, terms: acc });
        Ok(())
    }

    /// Largest degree `e_j - d_i` of a nonzero relation entry.
    pub fn max_entry_degree(&self) -> Option<usize> {
        self.relations
            .iter()
            .flat_map(|rel| {
                rel.terms
                    .iter()
                    .map(move |(g, _)| rel.degree - self.generators[*g].degree)
            })
            .max()
    }

    pub fn max_generator_degree(&self) -> Option<usize> {
        self.generators.iter().map(|g| g.degree).max()
    }

    /// The presentation matrix of `M_n`: rows are generators with `d_i ≤ n`,
    /// columns are relations with `e_j ≤ n`.
    pub fn piece_matrix(&self, n: usize) -> Mat<R> {
        let r = &self.ring;
        let rows: Vec<usize> = (0..self.generators.len())
            .filter(|&i| self.generators[i].degree <= n)
            .collect();
        let row_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let cols: Vec<&Relation<R>> = self.relations.iter().filter(|rel| rel.degree <= n).collect();
        let mut m = Mat::zeros(r, rows.len(), cols.len());
        for (j, rel) in cols.iter().enumerate() {
            for (g, c) in &rel.terms {
                let d = self.generators[*g].degree;
                // x^[n-e] * c x^[e-d] = c binom(n-d, n-e) x^[n-d]
                let b = r.binomial((n - d) as u64, (n - rel.degree) as u64);
                m.set(row_of[g], j, r.mul(c, &b));
            }
        }
        m
    }

    /// Structure of `M_n`: a dimension over a field, an abelian group over Z.
    pub fn graded_piece(&self, n: usize) -> AbelianGroupStructure {
        let m = self.piece_matrix(n);
        quotient_structure(m.rows(), &m)
    }

    /// `dim M_n` over a field.
    pub fn dim(&self, n: usize) -> usize {
        let m = self.piece_matrix(n);
        m.rows() - m.rank()
    }

    /// Serialises to the line format; parsing the output gives `self` back.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(w) = self.window {
            s.push_str(&format!("window {w}\n"));
        }
        for g in &self.generators {
            s.push_str(&format!("gen {} {}\n", g.id, g.degree));
        }
        for rel in &self.relations {
            let terms: Vec<String> = rel
                .terms
                .iter()
                .map(|(g, c)| {
                    let gen = &self.generators[*g];
                    format!("{}*{}*x[{}]", gen.id, self.ring.to_bigint(c), rel.degree - gen.degree)
                })
                .collect();
            let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            s.push_str(&format!("rel {} : {}\n", rel.degree, body));
        }
        s
    }

    pub fn parse(ring: &R, text: &str) -> Result<Self> {
        let mut p = Self::new(ring);
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.splitn(2, char::is_whitespace);
            let head = words.next().unwrap();
            let rest = words.next().unwrap_or("").trim();
            match head {
                "window" => {
                    let n = rest
                        .parse::<usize>()
                        .map_err(|_| perr(format!("bad window '{rest}'")))?;
                    p.window = Some(n);
                }
                "gen" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(perr("expected 'gen <id> <degree>'".into()));
                    }
                    let d = parts[1]
                        .parse::<usize>()
                        .map_err(|_| perr(format!("bad degree '{}'", parts[1])))?;
                    p.add_generator(parts[0], d).map_err(|e| perr(e.to_string()))?;
                }
                "rel" => {
                    let (deg, body) = rest
                        .split_once(':')
                        .ok_or_else(|| perr("expected 'rel <degree> : <terms>'".into()))?;
                    let e = deg
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| perr(format!("bad relation degree '{}'", deg.trim())))?;
                    let mut terms = Vec::new();
                    let body = body.trim();
                    if body != "0" {
                        for term in body.split('+') {
                            let f: Vec<&str> = term.trim().split('*').map(|x| x.trim()).collect();
                            if f.len() != 3 {
                                return Err(perr(format!("expected '<gen>*<coeff>*x[<k>]', got '{}'", term.trim())));
                            }
                            let g = p
                                .generators
                                .iter()
                                .position(|g| g.id == f[0])
                                .ok_or_else(|| perr(format!("unknown generator '{}'", f[0])))?;
                            let c: BigInt = f[1]
                                .parse()
                                .map_err(|_| perr(format!("bad coefficient '{}'", f[1])))?;
                            let k = f[2]
                                .strip_prefix("x[")
                                .and_then(|x| x.strip_suffix(']'))
                                .and_then(|x| x.trim().parse::<usize>().ok())
                                .ok_or_else(|| perr(format!("bad monomial '{}'", f[2])))?;
                            let d = p.generators[g].degree;
                            if d + k != e {
                                return Err(perr(format!(
                                    "term {} has degree {} but the relation has degree {e}",
                                    term.trim(),
                                    d + k
                                )));
                            }
                            terms.push((g, ring.from_bigint(&c)));
                        }
                    }
                    p.add_relation(e, &terms).map_err(|er| perr(er.to_string()))?;
                }
                other => return Err(perr(format!("unknown directive '{other}'"))),
            }
        }
        Ok(p)
    }

    /// Coker of `D[2] → D[1]`, `x^[0] ↦ 2x^[1]`.
    pub fn sphere(ring: &R) -> Self {
        let mut p = Self::new(ring);
        p.add_generator("g", 1).unwrap();
        p.add_relation(2, &[(0, ring.from_i64(2))]).unwrap();
        p
    }

    /// `D/D_+` with the relation family `x^[j] g`, `1 ≤ j ≤ n`, cut at `n`.
    pub fn augmentation_quotient(ring: &R, n: usize) -> Self {
        let mut p = Self::new(ring);
        p.add_generator("g", 0).unwrap();
        for j in 1..=n {
            p.add_relation(j, &[(0, ring.one())]).unwrap();
        }
        p.window = Some(n);
        p
    }

    /// `⊕_{i<p} (D / y_0 D)[i]`.
    pub fn shifted_y0_quotients(ring: &R) -> Self {
        let p = ring.characteristic() as usize;
        let mut pres = Self::new(ring);
        for i in 0..p {
            pres.add_generator(&format!("g{i}"), i).unwrap();
        }
        for i in 0..p {
            pres.add_relation(i + 1, &[(i, ring.one())]).unwrap();
        }
        pres
    }
}

impl<R: Ring> fmt::Display for DPPresentation<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Integers, PrimeField};

    #[test]
    fn free_module_pieces() {
        let f = PrimeField::new(3).unwrap();
        let p = DPPresentation::free(&f, &[2]);
        let dims: Vec<usize> = (0..6).map(|n| p.dim(n)).collect();
        assert_eq!(dims, vec![0, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn sphere_torsion() {
        let p = DPPresentation::sphere(&Integers);
        assert_eq!(p.graded_piece(1).free_rank, 1);
        for n in 2..12 {
            let s = p.graded_piece(n);
            assert_eq!(s.free_rank, 0);
            assert_eq!(s.invariant_factors, vec![BigInt::from(2 * n - 2)]);
        }
    }

    #[test]
    fn augmentation_quotient_pieces() {
        let f = PrimeField::new(2).unwrap();
        let p = DPPresentation::augmentation_quotient(&f, 8);
        assert_eq!(p.dim(0), 1);
        for n in 1..=8 {
            assert_eq!(p.dim(n), 0);
        }
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let text = "gen g 1\nrel 2 : g*2*x[1]\n";
        let p = DPPresentation::parse(&Integers, text).unwrap();
        assert_eq!(p.to_text(), text);
        let err = DPPresentation::parse(&Integers, "gen g 1\nrel 2 : g*2*x[3]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = DPPresentation::parse(&Integers, "gen g 1\nfoo\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let w = DPPresentation::augmentation_quotient(&Integers, 3);
        assert_eq!(DPPresentation::parse(&Integers, &w.to_text()).unwrap(), w);
    }
}
