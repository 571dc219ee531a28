//! Finite graded modules over `D_{[lo,hi)}`, the subalgebra of `D ⊗ F_p`
//! generated by `y_lo, …, y_{hi-1}` (dimension `p^{hi-lo}`).
//!
//! Every finitely presented module whose presentation entries have degree
//! `< p^s` is the base change of a finite module over `D_{<s}`, and `D` is
//! free over `D_{<s}`. So kernels, images, cokernels and freeness questions
//! reduce to the finite modules handled here.

use crate::error::{Error, Result};
use crate::exactlin::{Mat, PrimeField, Ring};

/// Column basis of the column space of `m`.
pub fn column_basis(m: &Mat<PrimeField>) -> Mat<PrimeField> {
    let rr = m.rref().expect("field");
    m.select_columns(&rr.pivots)
}

/// For independent columns `s` in `k^n`, returns `(q, e)` where the columns
/// of `e` are standard vectors completing `s` to a basis and
/// `q : k^n → k^n / span(s)` is the projection in the basis `e`.
pub fn complement(s: &Mat<PrimeField>) -> (Mat<PrimeField>, Mat<PrimeField>) {
    let f = s.ring().clone();
    let n = s.rows();
    let k = s.cols();
    let aug = s.hstack(&Mat::identity(&f, n));
    let rr = aug.rref().expect("field");
    let extra: Vec<usize> = rr.pivots.iter().filter(|&&c| c >= k).map(|c| c - k).collect();
    let e = Mat::identity(&f, n).select_columns(&extra);
    let b = s.hstack(&e);
    let inv = b.inverse().expect("completed basis is invertible");
    let q = inv.select_rows(&(k..n).collect::<Vec<_>>());
    (q, e)
}

/// A left inverse of a matrix with independent columns.
pub fn left_inverse(b: &Mat<PrimeField>) -> Mat<PrimeField> {
    let (_, e) = complement(b);
    let inv = b.hstack(&e).inverse().expect("completed basis is invertible");
    inv.select_rows(&(0..b.cols()).collect::<Vec<_>>())
}

#[derive(Clone, Debug)]
pub struct FinModule {
    field: PrimeField,
    lo: u32,
    hi: u32,
    dims: Vec<usize>,
    /// `ys[j - lo][n] : M_n → M_{n + p^j}`
    ys: Vec<Vec<Mat<PrimeField>>>,
}

/// `M / S` with the projection `M → M/S` and a linear section of it.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: FinModule,
    pub proj: GradedMap,
    pub section: GradedMap,
}

/// Per-degree matrices `f_n : M_n → N_n`.
pub type GradedMap = Vec<Mat<PrimeField>>;

/// Per-degree column bases of a graded subspace.
pub type GradedSubspace = Vec<Mat<PrimeField>>;

impl FinModule {
    /// Basis of the free module in degree `n`: pairs `(generator, k)` meaning
    /// `x^[k] g`, in generator order.
    pub fn free_basis(p: usize, lo: u32, hi: u32, degrees: &[usize], n: usize) -> Vec<(usize, usize)> {
        let step = p.pow(lo);
        let top = p.pow(hi);
        degrees
            .iter()
            .enumerate()
            .filter(|(_, &d)| d <= n && n - d < top && (n - d) % step == 0)
            .map(|(i, &d)| (i, n - d))
            .collect()
    }

    /// The free `D_{[lo,hi)}`-module on generators of the given degrees.
    pub fn free(field: &PrimeField, lo: u32, hi: u32, degrees: &[usize]) -> Self {
        let p = field.p() as usize;
        let top = p.pow(hi);
        let len = degrees.iter().map(|d| d + top).max().unwrap_or(0);
        let basis: Vec<Vec<(usize, usize)>> =
            (0..len).map(|n| Self::free_basis(p, lo, hi, degrees, n)).collect();
        let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
        let mut ys = Vec::new();
        for j in lo..hi {
            let q = p.pow(j);
            let mut per = Vec::with_capacity(len);
            for n in 0..len {
                let tgt = n + q;
                let tdim = if tgt < len { dims[tgt] } else { 0 };
                let mut m = Mat::zeros(field, tdim, dims[n]);
                if tgt < len {
                    for (col, &(i, k)) in basis[n].iter().enumerate() {
                        if k + q >= top {
                            continue;
                        }
                        let c = field.binomial((k + q) as u64, k as u64);
                        if field.is_zero(&c) {
                            continue;
                        }
                        let row = basis[tgt].iter().position(|&b| b == (i, k + q)).unwrap();
                        m.set(row, col, c);
                    }
                }
                per.push(m);
            }
            ys.push(per);
        }
        FinModule {
            field: field.clone(),
            lo,
            hi,
            dims,
            ys,
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }
    pub fn levels(&self) -> (u32, u32) {
        (self.lo, self.hi)
    }
    pub fn p(&self) -> usize {
        self.field.p() as usize
    }
    /// One past the largest degree stored.
    pub fn len(&self) -> usize {
        self.dims.len()
    }
    pub fn is_empty(&self) -> bool {
        self.total_dim() == 0
    }
    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).cloned().unwrap_or(0)
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn top_degree(&self) -> Option<usize> {
        (0..self.len()).rev().find(|&n| self.dims[n] > 0)
    }

    /// `y_j : M_n → M_{n+p^j}`.
    pub fn y(&self, j: u32, n: usize) -> Mat<PrimeField> {
        let q = self.p().pow(j);
        if j < self.lo || j >= self.hi || n >= self.len() {
            return Mat::zeros(&self.field, self.dim(n + q), self.dim(n));
        }
        self.ys[(j - self.lo) as usize][n].clone()
    }

    /// `x^[k] : M_n → M_{n+k}`, for `k` a multiple of `p^lo` below `p^hi`.
    pub fn x_action(&self, k: usize, n: usize) -> Result<Mat<PrimeField>> {
        let p = self.p();
        if k % p.pow(self.lo) != 0 || k >= p.pow(self.hi) {
            return Err(Error::invalid(format!(
                "x^[{k}] is not in D_[{}, {})",
                self.lo, self.hi
            )));
        }
        // x^[k] = Π_j y_j^{k_j} / k_j! over the base-p digits of k
        let f = &self.field;
        let mut acc = Mat::identity(f, self.dim(n));
        let mut deg = n;
        let mut rest = k;
        let mut j = 0u32;
        while rest > 0 {
            let c = rest % p;
            let mut fact = f.one();
            for t in 1..=c {
                acc = self.y(j, deg).mul(&acc);
                deg += p.pow(j);
                fact = f.mul(&fact, &f.from_i64(t as i64));
            }
            if c > 0 {
                acc = acc.scale(&f.inv(&fact).unwrap());
            }
            rest /= p;
            j += 1;
        }
        Ok(acc)
    }

    /// Columns spanning the full space in each degree.
    pub fn whole(&self) -> GradedSubspace {
        self.dims.iter().map(|&d| Mat::identity(&self.field, d)).collect()
    }

    pub fn zero_subspace(&self) -> GradedSubspace {
        self.dims.iter().map(|&d| Mat::zeros(&self.field, d, 0)).collect()
    }

    /// The submodule generated by the given homogeneous vectors, computed in
    /// one ascending pass over degrees.
    pub fn span_closure(&self, gens: &GradedSubspace) -> GradedSubspace {
        let p = self.p();
        let mut out: GradedSubspace = Vec::with_capacity(self.len());
        for n in 0..self.len() {
            let mut cols = match gens.get(n) {
                Some(g) => g.clone(),
                None => Mat::zeros(&self.field, self.dims[n], 0),
            };
            for j in self.lo..self.hi {
                let q = p.pow(j);
                if n >= q {
                    cols = cols.hstack(&self.y(j, n - q).mul(&out[n - q]));
                }
            }
            out.push(column_basis(&cols));
        }
        out
    }

    /// `I_r M = Σ_{j ≥ r} y_j M`.
    pub fn ideal_image(&self, r: u32) -> GradedSubspace {
        let p = self.p();
        (0..self.len())
            .map(|n| {
                let mut cols = Mat::zeros(&self.field, self.dims[n], 0);
                for j in r.max(self.lo)..self.hi {
                    let q = p.pow(j);
                    if n >= q {
                        cols = cols.hstack(&self.y(j, n - q));
                    }
                }
                column_basis(&cols)
            })
            .collect()
    }

    /// Degreewise dimensions of `M / I_r M`.
    pub fn indecomposables(&self, r: u32) -> Vec<usize> {
        self.ideal_image(r)
            .iter()
            .enumerate()
            .map(|(n, s)| self.dims[n] - s.cols())
            .collect()
    }

    /// Whether `M` is free over `D_{[r,hi)}`: by graded Nakayama this holds
    /// iff `dim M = p^{hi-r} dim(M / I_r M)`.
    pub fn is_free_over(&self, r: u32) -> bool {
        assert!(self.lo <= r && r <= self.hi);
        let gens: usize = self.indecomposables(r).iter().sum();
        self.total_dim() == self.p().pow(self.hi - r) * gens
    }

    /// Top degree of `M / I_r M`, the largest basis degree when `M` is free.
    pub fn top_generator_degree(&self, r: u32) -> Option<usize> {
        let ind = self.indecomposables(r);
        (0..ind.len()).rev().find(|&n| ind[n] > 0)
    }

    /// The submodule spanned by a stable graded subspace, in the given bases.
    pub fn sub(&self, s: &GradedSubspace) -> FinModule {
        let lefts: Vec<Mat<PrimeField>> = s.iter().map(left_inverse).collect();
        let dims: Vec<usize> = s.iter().map(|m| m.cols()).collect();
        let p = self.p();
        let ys = (self.lo..self.hi)
            .map(|j| {
                let q = p.pow(j);
                (0..self.len())
                    .map(|n| {
                        if n + q < self.len() {
                            lefts[n + q].mul(&self.y(j, n)).mul(&s[n])
                        } else {
                            Mat::zeros(&self.field, 0, dims[n])
                        }
                    })
                    .collect()
            })
            .collect();
        FinModule {
            field: self.field.clone(),
            lo: self.lo,
            hi: self.hi,
            dims,
            ys,
        }
    }

    /// `M / S` for a stable subspace `S`.
    pub fn quotient(&self, s: &GradedSubspace) -> Quotient {
        let mut projs = Vec::with_capacity(self.len());
        let mut sections = Vec::with_capacity(self.len());
        for (n, sub) in s.iter().enumerate() {
            let basis = column_basis(sub);
            debug_assert_eq!(basis.rows(), self.dims[n]);
            let (q, e) = complement(&basis);
            projs.push(q);
            sections.push(e);
        }
        let dims: Vec<usize> = projs.iter().map(|q| q.rows()).collect();
        let p = self.p();
        let ys = (self.lo..self.hi)
            .map(|j| {
                let q = p.pow(j);
                (0..self.len())
                    .map(|n| {
                        if n + q < self.len() {
                            projs[n + q].mul(&self.y(j, n)).mul(&sections[n])
                        } else {
                            Mat::zeros(&self.field, 0, dims[n])
                        }
                    })
                    .collect()
            })
            .collect();
        let module = FinModule {
            field: self.field.clone(),
            lo: self.lo,
            hi: self.hi,
            dims,
            ys,
        };
        Quotient {
            module,
            proj: projs,
            section: sections,
        }
    }

    /// Extends the stored degree range with zero pieces.
    pub fn pad(&mut self, len: usize) {
        while self.dims.len() < len {
            self.dims.push(0);
            for per in self.ys.iter_mut() {
                per.push(Mat::zeros(&self.field, 0, 0));
            }
        }
    }

    /// The same module viewed over the smaller algebra `D_{[r,hi)}`.
    pub fn restrict_levels(&self, r: u32) -> FinModule {
        assert!(self.lo <= r && r <= self.hi);
        FinModule {
            field: self.field.clone(),
            lo: r,
            hi: self.hi,
            dims: self.dims.clone(),
            ys: self.ys[(r - self.lo) as usize..].to_vec(),
        }
    }

    /// Checks `f` commutes with every `y_j`.
    pub fn is_linear_map(&self, f: &GradedMap, target: &FinModule) -> bool {
        let p = self.p();
        for j in self.lo..self.hi {
            let q = p.pow(j);
            for n in 0..self.len() {
                let src = &f[n];
                let tgt_n = n + q;
                let lhs = if tgt_n < self.len() {
                    f[tgt_n].mul(&self.y(j, n))
                } else {
                    Mat::zeros(&self.field, target.dim(tgt_n), self.dim(n))
                };
                let rhs = target.y(j, n).mul(src);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Degreewise kernel of `f : M → N`.
pub fn kernel_subspace(f: &GradedMap) -> GradedSubspace {
    f.iter().map(|m| m.kernel()).collect()
}

/// Degreewise image of `f : M → N`.
pub fn image_subspace(f: &GradedMap) -> GradedSubspace {
    f.iter().map(column_basis).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_module_dimensions() {
        let f = PrimeField::new(2).unwrap();
        let m = FinModule::free(&f, 0, 3, &[0]);
        assert_eq!(m.total_dim(), 8);
        assert!(m.is_free_over(0));
        assert_eq!(m.top_generator_degree(0), Some(0));
        assert_eq!(m.top_generator_degree(3), Some(7));
        // x^[1] x^[1] = 2 x^[2] = 0
        let x1 = m.x_action(1, 0).unwrap();
        assert!(m.x_action(1, 1).unwrap().mul(&x1).is_zero());
        // x^[1] x^[2] = 3 x^[3] = x^[3]
        let x3 = m.x_action(3, 0).unwrap();
        assert_eq!(m.x_action(1, 2).unwrap().mul(&m.x_action(2, 0).unwrap()), x3);
    }

    #[test]
    fn quotient_by_y0_is_free_over_upper_levels() {
        let f = PrimeField::new(3).unwrap();
        let m = FinModule::free(&f, 0, 2, &[0]);
        let mut g = m.zero_subspace();
        g[1] = Mat::identity(&f, 1);
        let s = m.span_closure(&g);
        let q = m.quotient(&s).module;
        assert_eq!(q.total_dim(), 3);
        assert!(!q.is_free_over(0));
        assert!(q.is_free_over(1));
        assert_eq!(q.dims()[..7], [1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn submodule_is_stable() {
        let f = PrimeField::new(2).unwrap();
        let m = FinModule::free(&f, 0, 2, &[0, 1]);
        let s = m.ideal_image(0);
        let sub = m.sub(&s);
        assert_eq!(sub.total_dim(), 6);
        let incl: GradedMap = s.clone();
        assert!(sub.is_linear_map(&incl, &m));
    }
}
