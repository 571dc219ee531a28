//! Dense matrices over a [`Ring`], with elimination routines that work over
//! both prime fields and the integers.

use std::fmt;

use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Mat<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> fmt::Debug for Mat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.ring.name())?;
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|e| self.ring.to_bigint(e).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl<R: Ring> Mat<R> {
    pub fn zeros(ring: &R, rows: usize, cols: usize) -> Self {
        Mat {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &R, rows: Vec<Vec<R::Elem>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Mat {
            ring: ring.clone(),
            rows: r,
            cols,
            data,
        }
    }

    pub fn from_i64(ring: &R, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Self::from_rows(ring, rows, cols)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: &R, rows: usize, cols: &[Vec<R::Elem>]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }
    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut R::Elem {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn columns(&self) -> Vec<Vec<R::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let r = &self.ring;
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                let a = a.clone();
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    if !r.is_zero(b) {
                        r.add_mul_assign(d, &a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        let r = &self.ring;
        (0..self.rows)
            .map(|i| {
                let mut acc = r.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !r.is_zero(a) && !r.is_zero(b) {
                        r.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(c, a)).collect();
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(&self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            ring: self.ring.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(&self.ring, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        Mat {
            ring: self.ring.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !self.ring.is_zero(&s) {
                let r = self.ring.clone();
                r.add_mul_assign(&mut self.data[dst * self.cols + j], c, &s);
            }
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !self.ring.is_zero(&s) {
                let r = self.ring.clone();
                r.add_mul_assign(&mut self.data[i * self.cols + dst], c, &s);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: &R::Elem) {
        for j in 0..self.cols {
            let v = self.ring.mul(c, &self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    fn scale_col(&mut self, j: usize, c: &R::Elem) {
        for i in 0..self.rows {
            let v = self.ring.mul(c, &self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    fn require_field(&self, op: &str) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::ModeMismatch(format!("{op} needs a prime field, got Z")))
        }
    }

    /// Reduced row echelon form over a field.
    pub fn rref(&self) -> Result<Rref<R>> {
        self.require_field("rref")?;
        let r = self.ring.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !r.is_zero(m.get(i, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = r.inv(m.get(row, col)).unwrap();
            m.scale_row(row, &inv);
            for i in 0..m.rows {
                if i != row {
                    let c = m.get(i, col).clone();
                    if !r.is_zero(&c) {
                        m.add_row_multiple(i, row, &r.neg(&c));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok(Rref { reduced: m, pivots })
    }

    pub fn rank(&self) -> usize {
        if self.ring.is_field() {
            self.rref().unwrap().pivots.len()
        } else {
            self.smith().rank()
        }
    }

    /// Column reduction `A U = H` by unimodular column operations, where the
    /// nonzero columns of `H` come first. Returns `(rank, H, U)`.
    pub fn column_reduce(&self) -> (usize, Self, Self) {
        let r = self.ring.clone();
        let mut h = self.clone();
        let mut u = Self::identity(&r, self.cols);
        let mut k = 0;
        for i in 0..h.rows {
            if k == h.cols {
                break;
            }
            loop {
                // smallest nonzero entry of row i among columns k..
                let mut best: Option<usize> = None;
                for j in k..h.cols {
                    let v = h.get(i, j);
                    if r.is_zero(v) {
                        continue;
                    }
                    match best {
                        None => best = Some(j),
                        Some(b) if r.smaller(v, h.get(i, b)) => best = Some(j),
                        _ => {}
                    }
                }
                let Some(b) = best else { break };
                h.swap_cols(k, b);
                u.swap_cols(k, b);
                let piv = h.get(i, k).clone();
                let mut done = true;
                for j in k + 1..h.cols {
                    let v = h.get(i, j).clone();
                    if r.is_zero(&v) {
                        continue;
                    }
                    let (q, rem) = r.div_rem(&v, &piv);
                    let nq = r.neg(&q);
                    h.add_col_multiple(j, k, &nq);
                    u.add_col_multiple(j, k, &nq);
                    if !r.is_zero(&rem) {
                        done = false;
                    }
                }
                if done {
                    let nz = r.normalizer(&piv);
                    h.scale_col(k, &nz);
                    u.scale_col(k, &nz);
                    k += 1;
                    break;
                }
            }
        }
        (k, h, u)
    }

    /// A basis of the kernel, as columns. Over `Z` the basis spans the full
    /// (saturated) kernel lattice.
    pub fn kernel(&self) -> Self {
        if self.ring.is_field() {
            let rr = self.rref().unwrap();
            rr.kernel_matrix()
        } else {
            let (rank, _, u) = self.column_reduce();
            let idx: Vec<usize> = (rank..self.cols).collect();
            u.select_columns(&idx)
        }
    }

    /// Smith normal form `P A Q = D` with `P`, `Q` unimodular.
    pub fn smith(&self) -> Smith<R> {
        let r = self.ring.clone();
        let (m, n) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut p = Self::identity(&r, m);
        let mut pinv = Self::identity(&r, m);
        let mut q = Self::identity(&r, n);
        let mut t = 0;
        while t < m.min(n) {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let v = d.get(i, j);
                    if r.is_zero(v) {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) if r.smaller(v, d.get(bi, bj)) => best = Some((i, j)),
                        _ => {}
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            d.swap_rows(t, bi);
            p.swap_rows(t, bi);
            pinv.swap_cols(t, bi);
            d.swap_cols(t, bj);
            q.swap_cols(t, bj);
            let piv = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let v = d.get(i, t).clone();
                if r.is_zero(&v) {
                    continue;
                }
                let (qq, rem) = r.div_rem(&v, &piv);
                let nq = r.neg(&qq);
                d.add_row_multiple(i, t, &nq);
                p.add_row_multiple(i, t, &nq);
                pinv.add_col_multiple(t, i, &qq);
                if !r.is_zero(&rem) {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let v = d.get(t, j).clone();
                if r.is_zero(&v) {
                    continue;
                }
                let (qq, rem) = r.div_rem(&v, &piv);
                let nq = r.neg(&qq);
                d.add_col_multiple(j, t, &nq);
                q.add_col_multiple(j, t, &nq);
                if !r.is_zero(&rem) {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pivot must divide every entry of the trailing block
            let mut bad: Option<usize> = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    let v = d.get(i, j);
                    if !r.is_zero(v) && !r.is_zero(&r.div_rem(v, &piv).1) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            if let Some(i) = bad {
                let one = r.one();
                d.add_row_multiple(t, i, &one);
                p.add_row_multiple(t, i, &one);
                pinv.add_col_multiple(i, t, &r.neg(&one));
                continue;
            }
            let nz = r.normalizer(&piv);
            let nzi = r.inv(&nz).unwrap();
            d.scale_row(t, &nz);
            p.scale_row(t, &nz);
            pinv.scale_col(t, &nzi);
            t += 1;
        }
        Smith { d, p, pinv, q }
    }

    /// Solve `A x = b`, returning some solution if one exists.
    pub fn solve(&self, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
        assert_eq!(b.len(), self.rows);
        let r = &self.ring;
        let s = self.smith();
        let pb = s.p.mul_vec(b);
        let mut y = vec![r.zero(); self.cols];
        for (i, v) in pb.iter().enumerate() {
            if i < s.d.cols && i < s.d.rows && !r.is_zero(s.d.get(i, i)) {
                let (qq, rem) = r.div_rem(v, s.d.get(i, i));
                if !r.is_zero(&rem) {
                    return None;
                }
                y[i] = qq;
            } else if !r.is_zero(v) {
                return None;
            }
        }
        Some(s.q.mul_vec(&y))
    }

    /// Exact inverse of a square matrix, if it is invertible over the ring.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let s = self.smith();
        let r = &self.ring;
        let mut dinv = Self::zeros(r, self.rows, self.rows);
        for i in 0..self.rows {
            dinv.set(i, i, r.inv(s.d.get(i, i))?);
        }
        Some(s.q.mul(&dinv).mul(&s.p))
    }
}

pub struct Rref<R: Ring> {
    pub reduced: Mat<R>,
    pub pivots: Vec<usize>,
}

impl<R: Ring> Rref<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_matrix(&self) -> Mat<R> {
        let m = &self.reduced;
        let r = m.ring();
        let n = m.cols();
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut k = Mat::zeros(r, n, free.len());
        for (jj, &f) in free.iter().enumerate() {
            k.set(f, jj, r.one());
            for (row, &pc) in self.pivots.iter().enumerate() {
                k.set(pc, jj, r.neg(m.get(row, f)));
            }
        }
        k
    }
}

/// `p * a * q = d`, `pinv = p^{-1}`.
pub struct Smith<R: Ring> {
    pub d: Mat<R>,
    pub p: Mat<R>,
    pub pinv: Mat<R>,
    pub q: Mat<R>,
}

impl<R: Ring> Smith<R> {
    pub fn diagonal(&self) -> Vec<R::Elem> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let r = self.d.ring();
        self.diagonal().iter().filter(|e| !r.is_zero(e)).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ring::{Integers, PrimeField};
    use num_bigint::BigInt;

    #[test]
    fn identity_rref_over_f2() {
        let f = PrimeField::new(2).unwrap();
        let rr = Mat::identity(&f, 2).rref().unwrap();
        assert_eq!(rr.rank(), 2);
        assert_eq!(rr.kernel_matrix().cols(), 0);
    }

    #[test]
    fn all_ones_row_kernel() {
        let f = PrimeField::new(2).unwrap();
        let m = Mat::from_i64(&f, &[vec![1, 1]]);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![1, 1]);
    }

    #[test]
    fn rref_rejects_integers() {
        let m = Mat::from_i64(&Integers, &[vec![1, 2]]);
        assert!(matches!(m.rref(), Err(Error::ModeMismatch(_))));
    }

    #[test]
    fn smith_diagonal_2_3() {
        let m = Mat::from_i64(&Integers, &[vec![2, 0], vec![0, 3]]);
        let s = m.smith();
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.p.mul(&m).mul(&s.q), s.d);
        assert_eq!(s.p.mul(&s.pinv), Mat::identity(&Integers, 2));
    }

    #[test]
    fn integer_kernel_is_saturated() {
        let m = Mat::from_i64(&Integers, &[vec![2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        // (1,1,-1) lies in the kernel and must be an integer combination
        let v: Vec<BigInt> = [1, 1, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert!(k.solve(&v).is_some());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(5).unwrap();
        let m = Mat::from_i64(&f, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(&f, 2));
        let z = Mat::from_i64(&Integers, &[vec![2, 1], vec![1, 1]]);
        assert_eq!(z.mul(&z.inverse().unwrap()), Mat::identity(&Integers, 2));
        assert!(Mat::from_i64(&Integers, &[vec![2]]).inverse().is_none());
    }
}
