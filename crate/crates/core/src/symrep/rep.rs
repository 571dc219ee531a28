//! Representations of Young subgroups of `S_n`, given by the matrices of the
//! adjacent transpositions they contain.

use super::perm::Perm;
use super::young::{subset_rep, subsets, YoungSubgroup};
use crate::error::{Error, Result};
use crate::exactlin::{Mat, Ring};

/// A representation of the Young subgroup generated by the present `s_i`.
/// An `SnModule` is a `Rep` with every generator present.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep<R: Ring> {
    ring: R,
    n: usize,
    dim: usize,
    gens: Vec<Option<Mat<R>>>,
}

pub type SnModule<R> = Rep<R>;

/// `a ⊗ b` with `b`'s index varying fastest.
pub fn kron<R: Ring>(a: &Mat<R>, b: &Mat<R>) -> Mat<R> {
    let r = a.ring();
    let mut out = Mat::zeros(r, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if r.is_zero(x) {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, r.mul(x, b.get(k, l)));
                }
            }
        }
    }
    out
}

impl<R: Ring> Rep<R> {
    pub fn new(ring: &R, n: usize, dim: usize, gens: Vec<Option<Mat<R>>>) -> Result<Self> {
        if gens.len() != n.saturating_sub(1) {
            return Err(Error::invalid(format!(
                "S_{n} needs {} generator slots, got {}",
                n.saturating_sub(1),
                gens.len()
            )));
        }
        for m in gens.iter().flatten() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::invalid("generator matrix has the wrong size"));
            }
        }
        Ok(Rep {
            ring: ring.clone(),
            n,
            dim,
            gens,
        })
    }

    /// An `S_n`-module from the matrices of `s_0, …, s_{n−2}`.
    pub fn sn(ring: &R, n: usize, dim: usize, gens: Vec<Mat<R>>) -> Result<Self> {
        Self::new(ring, n, dim, gens.into_iter().map(Some).collect())
    }

    pub fn trivial(ring: &R, n: usize) -> Self {
        Self::sn(ring, n, 1, vec![Mat::identity(ring, 1); n.saturating_sub(1)]).unwrap()
    }

    pub fn sign(ring: &R, n: usize) -> Self {
        let m = Mat::identity(ring, 1).scale(&ring.from_i64(-1));
        Self::sn(ring, n, 1, vec![m; n.saturating_sub(1)]).unwrap()
    }

    /// `k[S_n]` with basis `S_n` in lexicographic order; `g · e_h = e_{gh}`.
    pub fn regular(ring: &R, n: usize) -> Self {
        let all = Perm::all(n);
        let gens = (0..n.saturating_sub(1))
            .map(|i| {
                let s = Perm::s(i, n);
                let mut m = Mat::zeros(ring, all.len(), all.len());
                for (col, h) in all.iter().enumerate() {
                    let row = all.binary_search(&s.compose(h)).unwrap();
                    m.set(row, col, ring.one());
                }
                m
            })
            .collect();
        Self::sn(ring, n, all.len(), gens).unwrap()
    }

    /// The permutation module on `n` points.
    pub fn points(ring: &R, n: usize) -> Self {
        let gens = (0..n.saturating_sub(1))
            .map(|i| {
                let mut m = Mat::identity(ring, n);
                m.set(i, i, ring.zero());
                m.set(i + 1, i + 1, ring.zero());
                m.set(i, i + 1, ring.one());
                m.set(i + 1, i, ring.one());
                m
            })
            .collect();
        Self::sn(ring, n, n, gens).unwrap()
    }

    /// The zero module.
    pub fn zero(ring: &R, n: usize) -> Self {
        Self::sn(ring, n, 0, vec![Mat::zeros(ring, 0, 0); n.saturating_sub(1)]).unwrap()
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self, i: usize) -> Option<&Mat<R>> {
        self.gens.get(i).and_then(|g| g.as_ref())
    }

    pub fn is_sn_module(&self) -> bool {
        self.gens.iter().all(|g| g.is_some())
    }

    /// The Young subgroup generated by the present generators.
    pub fn group(&self) -> YoungSubgroup {
        let mut blocks = Vec::new();
        let mut cur = if self.n > 0 { 1 } else { 0 };
        for g in &self.gens {
            if g.is_some() {
                cur += 1;
            } else {
                blocks.push(cur);
                cur = 1;
            }
        }
        if self.n > 0 {
            blocks.push(cur);
        }
        YoungSubgroup::new(&blocks)
    }

    /// Matrix of `g`, which must lie in the group. Computed through the
    /// bubble-sort reduced word.
    pub fn matrix(&self, g: &Perm) -> Result<Mat<R>> {
        self.matrix_for_word(&g.resize(self.n.max(g.n())).reduced_word())
    }

    /// `S_{w_0} S_{w_1} ⋯`.
    pub fn matrix_for_word(&self, word: &[usize]) -> Result<Mat<R>> {
        let mut acc = Mat::identity(&self.ring, self.dim);
        for &i in word.iter().rev() {
            let s = self
                .generator(i)
                .ok_or_else(|| Error::invalid(format!("s_{i} is not in the acting group")))?;
            acc = s.mul(&acc);
        }
        Ok(acc)
    }

    /// `g · v`, applying generator matrices along a reduced word.
    pub fn act(&self, g: &Perm, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if v.len() != self.dim {
            return Err(Error::invalid(format!(
                "vector of length {} for a module of dimension {}",
                v.len(),
                self.dim
            )));
        }
        if g.n() > self.n && !(self.n..g.n()).all(|i| g.apply(i) == i) {
            return Err(Error::invalid(format!("{g:?} does not lie in S_{}", self.n)));
        }
        let word = g.resize(self.n.max(g.n())).reduced_word();
        let mut out = v.to_vec();
        for &i in word.iter().rev() {
            let s = self
                .generator(i)
                .ok_or_else(|| Error::invalid(format!("s_{i} is not in the acting group")))?;
            out = s.mul_vec(&out);
        }
        Ok(out)
    }

    /// Involution, braid and commutation relations among the present
    /// generators, as exact matrix identities.
    pub fn check_relations(&self) -> bool {
        let id = Mat::identity(&self.ring, self.dim);
        for i in 0..self.gens.len() {
            let Some(a) = self.generator(i) else { continue };
            if a.mul(a) != id {
                return false;
            }
            for j in i + 1..self.gens.len() {
                let Some(b) = self.generator(j) else { continue };
                let ok = if j == i + 1 {
                    a.mul(b).mul(a) == b.mul(a).mul(b)
                } else {
                    a.mul(b) == b.mul(a)
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Restriction to a Young subgroup of the current group.
    pub fn restrict(&self, h: &YoungSubgroup) -> Result<Self> {
        if h.n() != self.n {
            return Err(Error::invalid("subgroup of a different S_n"));
        }
        let gens = (0..self.gens.len())
            .map(|i| {
                if h.has_generator(i) {
                    self.generator(i)
                        .cloned()
                        .ok_or_else(|| Error::invalid("not a subgroup of the acting group"))
                        .map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.ring, self.n, self.dim, gens)
    }

    /// Restriction to `S_m` on the first `m ≤ n` points (the generators of
    /// `S_m` must be present).
    pub fn restrict_to_first(&self, m: usize) -> Result<Self> {
        if m > self.n {
            return Err(Error::invalid(format!("cannot restrict S_{} to S_{m}", self.n)));
        }
        let gens = self.gens[..m.saturating_sub(1)].to_vec();
        Self::new(&self.ring, m, self.dim, gens)
    }

    /// Regards the module as a representation of `H × S_{N−n}` inside `S_N`,
    /// the new block acting trivially.
    pub fn extend_ambient(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(Error::invalid("ambient group shrinks"));
        }
        let mut gens = self.gens.clone();
        if self.n > 0 && n > self.n {
            gens.push(None);
        }
        while gens.len() < n.saturating_sub(1) {
            gens.push(Some(Mat::identity(&self.ring, self.dim)));
        }
        Self::new(&self.ring, n, self.dim, gens)
    }

    /// Fixed vectors of the whole acting group, as columns. Over `Z` the
    /// columns span the full lattice of invariants.
    pub fn fixed_space(&self) -> Mat<R> {
        let id = Mat::identity(&self.ring, self.dim);
        let mut stacked = Mat::zeros(&self.ring, 0, self.dim);
        for g in self.gens.iter().flatten() {
            stacked = stacked.vstack(&g.sub(&id));
        }
        stacked.kernel()
    }

    /// Trace of the action of `g`.
    pub fn character(&self, g: &Perm) -> Result<R::Elem> {
        let m = self.matrix(g)?;
        let mut t = self.ring.zero();
        for i in 0..self.dim {
            t = self.ring.add(&t, m.get(i, i));
        }
        Ok(t)
    }

    /// Whether the linear map `f : self → other` commutes with every shared
    /// generator.
    pub fn is_equivariant(&self, f: &Mat<R>, other: &Rep<R>) -> bool {
        (0..self.gens.len().min(other.gens.len())).all(|i| match (self.generator(i), other.generator(i)) {
            (Some(a), Some(b)) => f.mul(a) == b.mul(f),
            _ => true,
        })
    }
}

/// `V ⊠ W` as a representation of `S_a × S_b ⊂ S_{a+b}`.
pub fn outer_tensor<R: Ring>(v: &Rep<R>, w: &Rep<R>) -> Result<Rep<R>> {
    if v.ring() != w.ring() {
        return Err(Error::ModeMismatch("outer tensor over different rings".into()));
    }
    let r = v.ring();
    let (a, b) = (v.n(), w.n());
    let n = a + b;
    let iv = Mat::identity(r, v.dim());
    let iw = Mat::identity(r, w.dim());
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let g = if i + 1 < a {
            v.generator(i).map(|m| kron(m, &iw))
        } else if i >= a && i + 1 < n {
            w.generator(i - a).map(|m| kron(&iv, m))
        } else {
            None
        };
        gens.push(g);
    }
    Rep::new(r, n, v.dim() * w.dim(), gens)
}

/// `Ind_{S_a × S_b}^{S_n}(V)` for a representation `V` of the two-block
/// Young subgroup `(a, b)`. Basis: `(A, v)` for `a`-subsets `A` in lex order,
/// meaning `c_A ⊗ v` with `c_A` the minimal left coset representative.
pub fn induce_young<R: Ring>(v: &Rep<R>, a: usize) -> Result<Rep<R>> {
    let n = v.n();
    let h = YoungSubgroup::new(&[a, n - a]);
    if a > n || !h.generators().iter().all(|&i| v.generator(i).is_some()) {
        return Err(Error::invalid(format!(
            "V must be a representation of S_{a} × S_{}",
            n - a
        )));
    }
    let r = v.ring();
    let subs = subsets(n, a);
    let d = v.dim();
    let total = subs.len() * d;
    let gens = (0..n.saturating_sub(1))
        .map(|i| {
            let s = Perm::s(i, n);
            let mut m = Mat::zeros(r, total, total);
            for (idx, sub) in subs.iter().enumerate() {
                let c = subset_rep(n, sub);
                let mut img: Vec<usize> = sub.iter().map(|&x| s.apply(x)).collect();
                img.sort();
                let jdx = subs.binary_search(&img).unwrap();
                let c2 = subset_rep(n, &img);
                // s c = c2 h
                let hperm = c2.inverse().compose(&s).compose(&c);
                let hm = v.matrix(&hperm)?;
                for x in 0..d {
                    for y in 0..d {
                        m.set(jdx * d + x, idx * d + y, hm.get(x, y).clone());
                    }
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    Rep::sn(r, n, total, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Integers, PrimeField};
    use num_bigint::BigInt;

    #[test]
    fn standard_modules_satisfy_relations() {
        let f = PrimeField::new(3).unwrap();
        for n in 0..5 {
            assert!(Rep::regular(&f, n).check_relations());
            assert!(Rep::points(&f, n).check_relations());
            assert!(Rep::sign(&Integers, n).check_relations());
        }
    }

    #[test]
    fn regular_s2_swaps() {
        let m = Rep::regular(&Integers, 2);
        let v = vec![BigInt::from(1), BigInt::from(0)];
        let w = m.act(&Perm::s(0, 2), &v).unwrap();
        assert_eq!(w, vec![BigInt::from(0), BigInt::from(1)]);
        assert_eq!(m.act(&Perm::identity(2), &v).unwrap(), v);
    }

    #[test]
    fn induced_sign_character() {
        let z = Integers;
        let v = outer_tensor(&Rep::sign(&z, 2), &Rep::trivial(&z, 1)).unwrap();
        let ind = induce_young(&v, 2).unwrap();
        assert_eq!(ind.dim(), 3);
        assert!(ind.check_relations());
        // brute-force character: Σ over cosets fixed by g of sign(h)
        for g in Perm::all(3) {
            let mut expect = 0i64;
            for sub in subsets(3, 2) {
                let c = subset_rep(3, &sub);
                let h = c.inverse().compose(&g).compose(&c);
                if YoungSubgroup::new(&[2, 1]).contains(&h) {
                    expect += h.resize(3).sign();
                }
            }
            assert_eq!(ind.character(&g).unwrap(), BigInt::from(expect));
        }
    }

    #[test]
    fn induction_of_trivial_is_permutation_module() {
        let f = PrimeField::new(2).unwrap();
        let v = outer_tensor(&Rep::trivial(&f, 1), &Rep::trivial(&f, 1)).unwrap();
        let ind = induce_young(&v, 1).unwrap();
        assert_eq!(ind, Rep::points(&f, 2));
    }
}
