//! Quotients of free modules and subquotients `Z/B` with explicit
//! coordinates, the form in which every cohomology group is stored.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::Mat;
use super::ring::Ring;
use crate::error::{Error, Result};

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | … | d_k`, all `d_i ≥ 2`.
/// Over a field only `free_rank` is used and means the dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn new(free_rank: usize, mut factors: Vec<BigInt>) -> Result<Self> {
        factors.retain(|d| !d.abs().is_one());
        for d in &mut factors {
            if d.is_zero() {
                return Err(Error::invalid("zero invariant factor"));
            }
            *d = d.abs();
        }
        for w in factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::invalid("invariant factors do not form a divisibility chain"));
            }
        }
        Ok(AbelianGroupStructure {
            free_rank,
            invariant_factors: factors,
        })
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure {
            free_rank: rank,
            invariant_factors: vec![],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().fold(BigInt::one(), |a, b| a * b)
    }

    /// Number of cyclic summands.
    /// Like `Display`, but a free module over `F_p` prints as `F_p^k`.
    pub fn render<R: Ring>(&self, ring: &R) -> String {
        if !ring.is_field() {
            return self.to_string();
        }
        match self.free_rank {
            0 => "0".into(),
            1 => ring.name(),
            k => format!("{}^{k}", ring.name()),
        }
    }

    pub fn generators(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Structure of `R^ambient / span(columns)`.
pub fn quotient_structure<R: Ring>(ambient: usize, image: &Mat<R>) -> AbelianGroupStructure {
    assert_eq!(image.rows(), ambient, "image columns must live in the ambient module");
    let r = image.ring();
    let s = image.smith();
    let diag = s.diagonal();
    let rank = diag.iter().filter(|d| !r.is_zero(d)).count();
    if r.is_field() {
        return AbelianGroupStructure::free(ambient - rank);
    }
    let factors = diag
        .iter()
        .filter(|d| !r.is_zero(d))
        .map(|d| r.to_bigint(d))
        .collect();
    AbelianGroupStructure::new(ambient - rank, factors).expect("Smith diagonal is a divisibility chain")
}

/// A subquotient `Z/B` of `R^ambient`, where `Z` is a saturated submodule
/// given by a basis `W` and `B ⊆ Z`. Classes get coordinates in
/// `⊕ R/(d_i)`; free coordinates are unreduced.
#[derive(Clone, Debug)]
pub struct Subquotient<R: Ring> {
    ring: R,
    ambient: usize,
    basis: Mat<R>,
    left_inverse: Mat<R>,
    /// Rows of the Smith transform of `B` kept as class coordinates.
    coord_rows: Mat<R>,
    /// Modulus per class coordinate, zero for free coordinates.
    moduli: Vec<R::Elem>,
    /// Representatives in the ambient module, one per class coordinate.
    reps: Mat<R>,
}

impl<R: Ring> Subquotient<R> {
    /// `z_basis`: ambient x z matrix whose columns span a saturated `Z`.
    /// `b_gens`: ambient x b matrix whose columns lie in `Z`.
    pub fn new(z_basis: &Mat<R>, b_gens: &Mat<R>) -> Result<Self> {
        let r = z_basis.ring().clone();
        let ambient = z_basis.rows();
        assert_eq!(b_gens.rows(), ambient);
        let z = z_basis.cols();
        let sw = z_basis.smith();
        let mut dinv = Mat::zeros(&r, z, ambient);
        for i in 0..z {
            let d = sw.d.get(i, i);
            let inv = r
                .inv(d)
                .ok_or_else(|| Error::invalid("cocycle basis is not saturated or not independent"))?;
            dinv.set(i, i, inv);
        }
        let left_inverse = sw.q.mul(&dinv).mul(&sw.p);
        let bw = left_inverse.mul(b_gens);
        if z_basis.mul(&bw) != *b_gens {
            return Err(Error::invalid("boundaries do not lie in the cycle module"));
        }
        let sb = bw.smith();
        let diag = sb.diagonal();
        let mut keep = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..z {
            let d = if i < diag.len() { diag[i].clone() } else { r.zero() };
            if r.is_zero(&d) || r.inv(&d).is_none() {
                keep.push(i);
                moduli.push(d);
            }
        }
        let coord_rows = sb.p.select_rows(&keep);
        let reps = z_basis.mul(&sb.pinv.select_columns(&keep));
        Ok(Subquotient {
            ring: r,
            ambient,
            basis: z_basis.clone(),
            left_inverse,
            coord_rows,
            moduli,
            reps,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    /// Number of class coordinates (the dimension over a field).
    pub fn ngens(&self) -> usize {
        self.moduli.len()
    }
    pub fn moduli(&self) -> &[R::Elem] {
        &self.moduli
    }
    pub fn cycle_basis(&self) -> &Mat<R> {
        &self.basis
    }

    pub fn structure(&self) -> AbelianGroupStructure {
        let r = &self.ring;
        let free = self.moduli.iter().filter(|d| r.is_zero(d)).count();
        let tors = self
            .moduli
            .iter()
            .filter(|d| !r.is_zero(d))
            .map(|d| r.to_bigint(d))
            .collect();
        AbelianGroupStructure::new(free, tors).expect("Smith diagonal is a divisibility chain")
    }

    /// Ambient representative of class generator `i`.
    pub fn representative(&self, i: usize) -> Vec<R::Elem> {
        self.reps.column(i)
    }

    /// Whether `v` lies in `Z`.
    pub fn contains(&self, v: &[R::Elem]) -> bool {
        let c = self.left_inverse.mul_vec(v);
        self.basis.mul_vec(&c) == v
    }

    /// Class coordinates of a cycle `v`; errors if `v` is not in `Z`.
    pub fn classify(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        let c = self.left_inverse.mul_vec(v);
        if self.basis.mul_vec(&c) != v {
            return Err(Error::invalid("vector is not a cycle"));
        }
        let x = self.coord_rows.mul_vec(&c);
        Ok(x
            .into_iter()
            .zip(&self.moduli)
            .map(|(a, d)| self.reduce(a, d))
            .collect())
    }

    fn reduce(&self, a: R::Elem, d: &R::Elem) -> R::Elem {
        let r = &self.ring;
        if r.is_zero(d) {
            return a;
        }
        let big = r.to_bigint(&a);
        let m = r.to_bigint(d);
        let red = ((big % &m) + &m) % &m;
        r.from_bigint(&red)
    }

    /// Reduce a coordinate vector into canonical form.
    pub fn normalize(&self, coords: &[R::Elem]) -> Vec<R::Elem> {
        coords
            .iter()
            .zip(&self.moduli)
            .map(|(a, d)| self.reduce(a.clone(), d))
            .collect()
    }
}

/// Whether a homomorphism between subquotients, given by the images of the
/// source generators, is bijective.
pub fn is_bijective<R: Ring>(map: &Mat<R>, src: &Subquotient<R>, dst: &Subquotient<R>) -> bool {
    let r = map.ring();
    if src.structure() != dst.structure() {
        return false;
    }
    if r.is_field() {
        return map.rows() == map.cols() && map.rank() == map.rows();
    }
    // surjective onto a group isomorphic to the source: then bijective
    let n = dst.ngens();
    let mut rel = Mat::zeros(r, n, n);
    for (i, d) in dst.moduli().iter().enumerate() {
        rel.set(i, i, d.clone());
    }
    let all = map.hstack(&rel);
    quotient_structure(n, &all).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ring::{Integers, PrimeField};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn cyclic_quotients() {
        let m = Mat::from_i64(&Integers, &[vec![6]]);
        assert_eq!(quotient_structure(1, &m).invariant_factors, vec![big(6)]);
        let m = Mat::from_i64(&Integers, &[vec![2, 0], vec![0, 0]]);
        let s = quotient_structure(2, &m);
        assert_eq!((s.free_rank, s.invariant_factors.clone()), (1, vec![big(2)]));
        assert_eq!(s.to_string(), "Z + Z/2");
        let f = PrimeField::new(2).unwrap();
        let m = Mat::from_i64(&f, &[vec![1], vec![1], vec![0]]);
        assert_eq!(quotient_structure(3, &m).free_rank, 2);
    }

    #[test]
    fn factor_chain_validation() {
        assert!(AbelianGroupStructure::new(0, vec![big(2), big(3)]).is_err());
        let s = AbelianGroupStructure::new(0, vec![big(1), big(2), big(4)]).unwrap();
        assert_eq!(s.invariant_factors, vec![big(2), big(4)]);
    }

    #[test]
    fn subquotient_coordinates() {
        // Z = Z^2, B = span{(2, 0), (0, 3)} gives Z/6
        let z = Mat::identity(&Integers, 2);
        let b = Mat::from_i64(&Integers, &[vec![2, 0], vec![0, 3]]);
        let q = Subquotient::new(&z, &b).unwrap();
        assert_eq!(q.structure().invariant_factors, vec![big(6)]);
        let g = q.representative(0);
        let c = q.classify(&g).unwrap();
        assert_eq!(c, vec![big(1)]);
        let c2 = q.classify(&[big(2), big(0)]).unwrap();
        assert_eq!(c2, vec![big(0)]);
    }
}
