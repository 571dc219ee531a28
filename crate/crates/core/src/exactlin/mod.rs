//! Exact linear algebra over `F_p` and `Z`.

pub mod matrix;
pub mod quotient;
pub mod ring;
pub mod scalar;
pub mod sparse;

pub use matrix::{Mat, Rref, Smith};
pub use quotient::{is_bijective, quotient_structure, AbelianGroupStructure, Subquotient};
pub use ring::{big_binomial, ell, is_prime, Integers, PrimeField, Ring};
pub use scalar::{RingMode, Scalar};
pub use sparse::SparseMatrix;

use crate::error::{Error, Result};

/// Rank, kernel basis and pivot columns of a sparse matrix over a field.
pub fn rref<R: Ring>(m: &SparseMatrix<R>) -> Result<(usize, Vec<Vec<R::Elem>>, Vec<usize>)> {
    let r = m.rref()?;
    Ok((r.rank, r.kernel_basis, r.pivot_cols))
}

/// Invariant factors (with unit factors kept, as in the Smith diagonal) and
/// the free rank of the cokernel of an integer matrix.
pub fn smith_normal_form(m: &SparseMatrix<Integers>) -> (Vec<num_bigint::BigInt>, usize) {
    let d = m.to_dense();
    let s = d.smith();
    let diag: Vec<_> = s.diagonal().into_iter().filter(|x| !num_traits::Zero::is_zero(x)).collect();
    let free = m.rows() - diag.len();
    (diag, free)
}

/// Structure of an integer cokernel; errors when given a field matrix.
pub fn cokernel_structure<R: Ring>(m: &SparseMatrix<R>) -> Result<AbelianGroupStructure> {
    if m.ring().is_field() {
        return Err(Error::ModeMismatch("Smith normal form needs Z".into()));
    }
    Ok(quotient_structure(m.rows(), &m.to_dense()))
}
