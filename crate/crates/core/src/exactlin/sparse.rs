//! Sparse matrices and sparse row reduction over prime fields.

use std::collections::BTreeMap;

use super::matrix::Mat;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Below this many columns elimination runs on a dense copy.
pub const DENSE_CUTOFF: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    /// Per row, entries sorted by column, no zeros stored.
    data: Vec<Vec<(usize, R::Elem)>>,
}

pub struct SparseRref<R: Ring> {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    /// Columns of the kernel basis, each of length `cols`.
    pub kernel_basis: Vec<Vec<R::Elem>>,
}

impl<R: Ring> SparseMatrix<R> {
    pub fn new(ring: &R, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds from triplets; repeated positions are summed.
    pub fn from_triplets(
        ring: &R,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, R::Elem)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, R::Elem>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry out of range");
            let e = acc[i].entry(j).or_insert_with(|| ring.zero());
            *e = ring.add(e, &v);
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect())
            .collect();
        SparseMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_dense(m: &Mat<R>) -> Self {
        let r = m.ring();
        let entries = (0..m.rows()).flat_map(|i| {
            (0..m.cols())
                .filter(move |&j| !r.is_zero(m.get(i, j)))
                .map(move |j| (i, j, m.get(i, j).clone()))
        });
        Self::from_triplets(r, m.rows(), m.cols(), entries.collect::<Vec<_>>())
    }

    pub fn to_dense(&self) -> Mat<R> {
        let mut m = Mat::zeros(&self.ring, self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R::Elem)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        self.data
            .iter()
            .map(|row| {
                let mut acc = r.zero();
                for (j, a) in row {
                    r.add_mul_assign(&mut acc, a, &v[*j]);
                }
                acc
            })
            .collect()
    }

    /// Rank, pivot columns and a kernel basis over a prime field.
    pub fn rref(&self) -> Result<SparseRref<R>> {
        if !self.ring.is_field() {
            return Err(Error::ModeMismatch(
                "rref needs a prime field, got Z".to_string(),
            ));
        }
        if self.cols < DENSE_CUTOFF {
            let rr = self.to_dense().rref()?;
            let k = rr.kernel_matrix();
            return Ok(SparseRref {
                rank: rr.rank(),
                pivot_cols: rr.pivots.clone(),
                kernel_basis: k.columns(),
            });
        }
        Ok(self.sparse_rref())
    }

    fn sparse_rref(&self) -> SparseRref<R> {
        let r = &self.ring;
        let mut pending: Vec<Vec<(usize, R::Elem)>> =
            self.data.iter().filter(|row| !row.is_empty()).cloned().collect();
        // pivot rows keyed by pivot column, each normalized to leading 1
        let mut basis: BTreeMap<usize, Vec<(usize, R::Elem)>> = BTreeMap::new();
        // Markowitz-style ordering: sparsest rows first, ties by leading column
        pending.sort_by_key(|row| (row.len(), row[0].0));
        for row in pending {
            let mut row = row;
            loop {
                // eliminate the first entry that hits an existing pivot
                let hit = row.iter().position(|(c, _)| basis.contains_key(c));
                let Some(pos) = hit else { break };
                let (c, v) = row[pos].clone();
                let prow = &basis[&c];
                row = axpy(r, &row, &r.neg(&v), prow);
            }
            if row.is_empty() {
                continue;
            }
            // choose the pivot column with the fewest uses in the basis
            let (pc, pv) = row
                .iter()
                .min_by_key(|(c, _)| (col_weight(&basis, *c), *c))
                .cloned()
                .unwrap();
            let inv = r.inv(&pv).unwrap();
            let row: Vec<(usize, R::Elem)> = row.into_iter().map(|(c, v)| (c, r.mul(&inv, &v))).collect();
            // keep the basis fully reduced with respect to the new pivot
            let keys: Vec<usize> = basis.keys().cloned().collect();
            for k in keys {
                let b = &basis[&k];
                if let Some((_, v)) = b.iter().find(|(c, _)| *c == pc) {
                    let nb = axpy(r, b, &r.neg(v), &row);
                    basis.insert(k, nb);
                }
            }
            basis.insert(pc, row);
        }
        let pivot_cols: Vec<usize> = basis.keys().cloned().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !basis.contains_key(c)).collect();
        let kernel_basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![r.zero(); self.cols];
                v[f] = r.one();
                for (pc, row) in &basis {
                    if let Some((_, a)) = row.iter().find(|(c, _)| *c == f) {
                        v[*pc] = r.neg(a);
                    }
                }
                v
            })
            .collect();
        SparseRref {
            rank: pivot_cols.len(),
            pivot_cols,
            kernel_basis,
        }
    }
}

fn col_weight<E>(basis: &BTreeMap<usize, Vec<(usize, E)>>, c: usize) -> usize {
    basis.values().filter(|row| row.iter().any(|(j, _)| *j == c)).count()
}

/// `a + c * b` for sorted sparse rows.
fn axpy<R: Ring>(
    r: &R,
    a: &[(usize, R::Elem)],
    c: &R::Elem,
    b: &[(usize, R::Elem)],
) -> Vec<(usize, R::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = r.mul(c, &b[j].1);
            if !r.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            r.add_mul_assign(&mut v, c, &b[j].1);
            if !r.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ring::PrimeField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sparse_path_agrees_with_dense() {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cols = 300;
        let entries: Vec<_> = (0..120)
            .flat_map(|i| {
                (0..4)
                    .map(|_| (i, rng.gen_range(0..cols), rng.gen_range(1..3u64)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let m = SparseMatrix::from_triplets(&f, 120, cols, entries);
        let sp = m.rref().unwrap();
        let dense = m.to_dense().rref().unwrap();
        assert_eq!(sp.rank, dense.rank());
        assert_eq!(sp.rank + sp.kernel_basis.len(), cols);
        for v in &sp.kernel_basis {
            assert!(m.mul_vec(v).iter().all(|e| *e == 0));
        }
    }
}
