//! Partitions, tabloid (permutation) modules and Specht modules.
//!
//! A tabloid of shape `μ` is stored as its row sequence: the row index of
//! each point. `S_n` acts by `(g·T)(g(i)) = T(i)`.

use std::collections::HashMap;
use std::fmt;

use super::perm::Perm;
use super::rep::Rep;
use crate::error::{Error, Result};
use crate::exactlin::{Mat, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "{parts:?} is not a partition (positive, weakly decreasing parts)"
            )));
        }
        Ok(Partition {
            parts: parts.to_vec(),
        })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first(&self) -> usize {
        self.parts.first().cloned().unwrap_or(0)
    }

    /// `μ[n] = (n − |μ|, μ)`, defined for `n ≥ |μ| + μ_1`.
    pub fn padded(&self, n: usize) -> Option<Partition> {
        let d = self.size();
        if n < d + self.first() {
            return None;
        }
        let mut parts = vec![n - d];
        parts.extend(&self.parts);
        Some(Partition { parts })
    }

    /// Transposed shape.
    pub fn conjugate(&self) -> Partition {
        let parts = (0..self.first())
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Row sequences with `sizes[r]` entries equal to `r`, lexicographically.
pub fn row_sequences(sizes: &[usize]) -> Vec<Vec<usize>> {
    fn rec(left: &mut Vec<usize>, cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for r in 0..left.len() {
            if left[r] > 0 {
                left[r] -= 1;
                cur.push(r);
                rec(left, cur, total, out);
                cur.pop();
                left[r] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut sizes.to_vec(), &mut Vec::new(), sizes.iter().sum(), &mut out);
    out
}

/// The tabloid module of shape `μ`, basis in lex order of row sequences.
pub fn permutation_module<R: Ring>(ring: &R, mu: &Partition) -> (Rep<R>, Vec<Vec<usize>>) {
    let tabloids = row_sequences(mu.parts());
    let index: HashMap<&Vec<usize>, usize> = tabloids.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let n = mu.size();
    let gens = (0..n.saturating_sub(1))
        .map(|i| {
            let mut m = Mat::zeros(ring, tabloids.len(), tabloids.len());
            for (col, t) in tabloids.iter().enumerate() {
                let mut u = t.clone();
                u.swap(i, i + 1);
                m.set(index[&u], col, ring.one());
            }
            m
        })
        .collect();
    let rep = Rep::sn(ring, n, tabloids.len(), gens).unwrap();
    (rep, tabloids)
}

/// A tableau: `rows[r]` lists the entries of row `r` left to right.
pub type Tableau = Vec<Vec<usize>>;

/// Standard tableaux of shape `μ` with entries `0..n`.
pub fn standard_tableaux(mu: &Partition) -> Vec<Tableau> {
    fn rec(mu: &[usize], t: &mut Tableau, next: usize, n: usize, out: &mut Vec<Tableau>) {
        if next == n {
            out.push(t.clone());
            return;
        }
        for r in 0..mu.len() {
            let c = t[r].len();
            if c < mu[r] && (r == 0 || t[r - 1].len() > c) {
                t[r].push(next);
                rec(mu, t, next + 1, n, out);
                t[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut t = vec![Vec::new(); mu.parts().len()];
    rec(mu.parts(), &mut t, 0, mu.size(), &mut out);
    out
}

/// The polytabloid `e_T = Σ_{σ ∈ C_T} sgn(σ) {σT}` over the tabloids
/// `index`, with tabloid row sequences over the points of `T`.
pub fn polytabloid<R: Ring>(
    ring: &R,
    t: &Tableau,
    n: usize,
    index: &HashMap<Vec<usize>, usize>,
    len: usize,
) -> Vec<R::Elem> {
    let mut v = vec![ring.zero(); len];
    let ncols = t.first().map_or(0, |r| r.len());
    let columns: Vec<Vec<usize>> = (0..ncols)
        .map(|c| t.iter().filter(|row| row.len() > c).map(|row| row[c]).collect())
        .collect();
    // iterate over the product of column permutations
    let perms: Vec<Vec<Perm>> = columns.iter().map(|col| Perm::all(col.len())).collect();
    let mut idx = vec![0usize; columns.len()];
    let base_row: Vec<usize> = {
        let mut r = vec![0; n];
        for (ri, row) in t.iter().enumerate() {
            for &x in row {
                r[x] = ri;
            }
        }
        r
    };
    loop {
        let mut seq = base_row.clone();
        let mut sign = 1i64;
        for (c, col) in columns.iter().enumerate() {
            let p = &perms[c][idx[c]];
            sign *= p.sign();
            // entry col[j] moves to the position of col[p(j)], i.e. its row
            for (j, &x) in col.iter().enumerate() {
                seq[x] = base_row[col[p.apply(j)]];
            }
        }
        let pos = index[&seq];
        v[pos] = ring.add(&v[pos], &ring.from_i64(sign));
        // advance the mixed-radix counter
        let mut c = 0;
        loop {
            if c == idx.len() {
                return v;
            }
            idx[c] += 1;
            if idx[c] < perms[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

/// A Specht module with its embedding into the tabloid module.
#[derive(Clone, Debug)]
pub struct SpechtModule<R: Ring> {
    pub shape: Partition,
    pub rep: Rep<R>,
    pub tabloid_module: Rep<R>,
    pub tabloids: Vec<Vec<usize>>,
    /// Columns: standard polytabloids in tabloid coordinates.
    pub embedding: Mat<R>,
    pub standard: Vec<Tableau>,
}

/// Writes `v` (in the span of the standard polytabloids `basis`) in that
/// basis. Each standard `e_T` has `{T}` as its lex-smallest tabloid with
/// coefficient 1, so peeling off the smallest support entry is exact.
pub fn express_in_standard_basis<R: Ring>(
    ring: &R,
    basis: &Mat<R>,
    leading: &[usize],
    v: &[R::Elem],
) -> Result<Vec<R::Elem>> {
    let mut rest = v.to_vec();
    let mut out = vec![ring.zero(); basis.cols()];
    while let Some(pos) = rest.iter().position(|x| !ring.is_zero(x)) {
        let j = leading
            .iter()
            .position(|&l| l == pos)
            .ok_or_else(|| Error::invalid("vector is not in the span of the standard polytabloids"))?;
        let c = rest[pos].clone();
        out[j] = ring.add(&out[j], &c);
        for i in 0..rest.len() {
            let b = basis.get(i, j);
            if !ring.is_zero(b) {
                rest[i] = ring.sub(&rest[i], &ring.mul(&c, b));
            }
        }
    }
    Ok(out)
}

pub fn specht_module<R: Ring>(ring: &R, mu: &Partition) -> SpechtModule<R> {
    let n = mu.size();
    let (perm_mod, tabloids) = permutation_module(ring, mu);
    let index: HashMap<Vec<usize>, usize> =
        tabloids.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let standard = standard_tableaux(mu);
    let cols: Vec<Vec<R::Elem>> = standard
        .iter()
        .map(|t| polytabloid(ring, t, n, &index, tabloids.len()))
        .collect();
    let embedding = Mat::from_columns(ring, tabloids.len(), &cols);
    let leading: Vec<usize> = cols
        .iter()
        .map(|c| c.iter().position(|x| !ring.is_zero(x)).unwrap())
        .collect();
    let gens = (0..n.saturating_sub(1))
        .map(|i| {
            let s = perm_mod.generator(i).unwrap();
            let images: Vec<Vec<R::Elem>> = cols
                .iter()
                .map(|c| express_in_standard_basis(ring, &embedding, &leading, &s.mul_vec(c)).unwrap())
                .collect();
            Mat::from_columns(ring, cols.len(), &images)
        })
        .collect();
    let rep = Rep::sn(ring, n, cols.len(), gens).unwrap();
    SpechtModule {
        shape: mu.clone(),
        rep,
        tabloid_module: perm_mod,
        tabloids,
        embedding,
        standard,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Integers, PrimeField};
    use num_bigint::BigInt;

    #[test]
    fn tabloid_module_dimensions() {
        let z = Integers;
        let p = |v: &[usize]| Partition::new(v).unwrap();
        assert_eq!(permutation_module(&z, &p(&[4])).0.dim(), 1);
        assert_eq!(permutation_module(&z, &p(&[3, 1])).0.dim(), 4);
        let (m, _) = permutation_module(&z, &p(&[2, 1]));
        assert_eq!(m.dim(), 3);
        // character (3, 1, 0) on classes 1^3, (2,1), (3)
        let chars: Vec<BigInt> = [vec![0, 1, 2], vec![1, 0, 2], vec![1, 2, 0]]
            .into_iter()
            .map(|im| m.character(&Perm::from_images(im).unwrap()).unwrap())
            .collect();
        assert_eq!(chars, vec![BigInt::from(3), BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn specht_dimensions() {
        let f2 = PrimeField::new(2).unwrap();
        let p = |v: &[usize]| Partition::new(v).unwrap();
        assert_eq!(specht_module(&Integers, &p(&[5])).rep.dim(), 1);
        assert_eq!(specht_module(&Integers, &p(&[4, 1])).rep.dim(), 4);
        let s = specht_module(&f2, &p(&[2, 2]));
        assert_eq!(s.rep.dim(), 2);
        assert_eq!(s.embedding.rank(), 2);
        assert!(s.rep.check_relations());
        // equivariance of the embedding
        assert!(s.rep.is_equivariant(&s.embedding, &s.tabloid_module));
        let s = specht_module(&Integers, &p(&[3, 2, 1]));
        assert_eq!(s.rep.dim(), 16);
        assert!(s.rep.check_relations());
        assert!(s.rep.is_equivariant(&s.embedding, &s.tabloid_module));
    }

    #[test]
    fn partition_helpers() {
        assert!(Partition::new(&[1, 2]).is_err());
        let mu = Partition::new(&[2, 1]).unwrap();
        assert_eq!(mu.padded(4), None);
        assert_eq!(mu.padded(5).unwrap().parts(), &[2, 2, 1]);
        assert_eq!(mu.conjugate().parts(), &[2, 1]);
    }
}
