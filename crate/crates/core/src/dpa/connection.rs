//! Connections `∇ : M_n → M_{n−q}` on truncated graded `D`-modules and the
//! decomposition `M ≅ ker(∇) ⊗ D^{(q)}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Mat, Ring};

/// A graded `D`-module on degrees `0..=N` with a `q`-connection.
///
/// `action[(n, m)]` is multiplication by `x^[m−n]` from `M_n` to `M_m`;
/// `nabla[n]` maps `M_n → M_{n−q}` (empty for `n < q`).
#[derive(Clone, Debug)]
pub struct ConnectionData<R: Ring> {
    pub ring: R,
    pub q: usize,
    pub dims: Vec<usize>,
    pub nabla: Vec<Mat<R>>,
    pub action: BTreeMap<(usize, usize), Mat<R>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectionDecomposition {
    /// Degrees of a basis of `ker ∇`, ascending with multiplicity.
    pub kernel_degrees: Vec<usize>,
    /// `dim ker ∇_n` for each degree of the window.
    pub kernel_dims: Vec<usize>,
    pub window: usize,
}

impl<R: Ring> ConnectionData<R> {
    /// `⊕ D[d_i]` truncated at `N`, with `∇ = d_q` on each summand.
    pub fn free(ring: &R, q: usize, degrees: &[usize], window: usize) -> Self {
        let basis = |n: usize| -> Vec<usize> {
            (0..degrees.len()).filter(|&i| degrees[i] <= n).collect()
        };
        let dims: Vec<usize> = (0..=window).map(|n| basis(n).len()).collect();
        let mut nabla = Vec::new();
        for n in 0..=window {
            if n < q {
                nabla.push(Mat::zeros(ring, 0, dims[n]));
                continue;
            }
            let (src, tgt) = (basis(n), basis(n - q));
            let mut m = Mat::zeros(ring, tgt.len(), src.len());
            for (col, i) in src.iter().enumerate() {
                if let Some(row) = tgt.iter().position(|j| j == i) {
                    m.set(row, col, ring.one());
                }
            }
            nabla.push(m);
        }
        let mut action = BTreeMap::new();
        for n in 0..=window {
            for m in n..=window {
                let (src, tgt) = (basis(n), basis(m));
                let mut a = Mat::zeros(ring, tgt.len(), src.len());
                for (col, i) in src.iter().enumerate() {
                    let row = tgt.iter().position(|j| j == i).unwrap();
                    let k = n - degrees[*i];
                    a.set(row, col, ring.binomial((m - degrees[*i]) as u64, k as u64));
                }
                action.insert((n, m), a);
            }
        }
        ConnectionData {
            ring: ring.clone(),
            q,
            dims,
            nabla,
            action,
        }
    }

    pub fn window(&self) -> usize {
        self.dims.len() - 1
    }

    fn act(&self, n: usize, m: usize) -> Option<&Mat<R>> {
        self.action.get(&(n, m))
    }

    /// `∇(x^[k] c) = x^[k] ∇c + x^[k−q] c` for every stored action map.
    pub fn check_leibniz(&self) -> Result<()> {
        let r = &self.ring;
        let q = self.q;
        for (&(n, m), a) in &self.action {
            let k = m - n;
            if m < q {
                continue;
            }
            let lhs = self.nabla[m].mul(a);
            let mut rhs = Mat::zeros(r, self.dims[m - q], self.dims[n]);
            if n >= q {
                let Some(b) = self.act(n - q, m - q) else { continue };
                rhs = rhs.add(&b.mul(&self.nabla[n]));
            }
            if k >= q {
                let Some(c) = self.act(n, m - q) else { continue };
                rhs = rhs.add(c);
            }
            if lhs != rhs {
                let col = (0..self.dims[n])
                    .find(|&j| lhs.column(j) != rhs.column(j))
                    .unwrap_or(0);
                return Err(Error::Leibniz(format!(
                    "f = x^[{k}], m = basis vector {col} of degree {n}"
                )));
            }
        }
        Ok(())
    }
}

/// Verifies Leibniz, then checks that `ker ∇ ⊗ D^{(q)} → M` is an
/// isomorphism in every degree of the window.
pub fn connection_decompose<R: Ring>(c: &ConnectionData<R>) -> Result<ConnectionDecomposition> {
    c.check_leibniz()?;
    let r = &c.ring;
    let window = c.window();
    let kernels: Vec<Mat<R>> = (0..=window)
        .map(|n| {
            if n < c.q {
                Mat::identity(r, c.dims[n])
            } else {
                c.nabla[n].kernel()
            }
        })
        .collect();
    let top_start = (window + 1).saturating_sub(c.q);
    if (top_start..=window).any(|n| kernels[n].cols() > 0) && window + 1 > c.q {
        return Err(Error::WindowTooShort(format!(
            "ker ∇ is nonzero within the top {} degrees of the window {window}",
            c.q
        )));
    }
    for n in 0..=window {
        let mut blocks = Mat::zeros(r, c.dims[n], 0);
        let mut k = n % c.q;
        while k <= n {
            if kernels[k].cols() > 0 {
                let a = c.act(k, n).ok_or_else(|| {
                    Error::invalid(format!("missing action map from degree {k} to {n}"))
                })?;
                blocks = blocks.hstack(&a.mul(&kernels[k]));
            }
            k += c.q;
        }
        if blocks.rows() != blocks.cols() || blocks.inverse().is_none() {
            return Err(Error::invalid(format!(
                "ker ∇ ⊗ D → M is not an isomorphism in degree {n}"
            )));
        }
    }
    let kernel_dims: Vec<usize> = kernels.iter().map(|k| k.cols()).collect();
    let kernel_degrees = kernel_dims
        .iter()
        .enumerate()
        .flat_map(|(n, &d)| std::iter::repeat(n).take(d))
        .collect();
    Ok(ConnectionDecomposition {
        kernel_degrees,
        kernel_dims,
        window,
    })
}
