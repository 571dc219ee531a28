//! Shapiro's isomorphism `H^t(S_d × S_{n−d}, V) ≅ H^t(S_n, I(V)_n)` and the
//! connection it transports onto `Γ^t(I(V))`.

use serde::Serialize;

use super::{action_cocycle, build_gamma, GammaModule};
use crate::dpa::{connection_decompose, ConnectionData, ConnectionDecomposition};
use crate::error::{Error, Result};
use crate::exactlin::{is_bijective, Mat, Ring};
use crate::fimod::{induced_fi, FIModuleHandle};
use crate::grpcoh::{cohomology, corestrict, inflate, push, Cocycle, CohomologyGroup, Method};
use crate::symrep::{outer_tensor, Rep, YoungSubgroup};

fn young(d: usize, n: usize) -> YoungSubgroup {
    YoungSubgroup::new(&[d, n - d])
}

/// `V ⊠ triv` for `S_d × S_{n−d}`.
fn young_module<R: Ring>(v: &Rep<R>, n: usize) -> Result<Rep<R>> {
    outer_tensor(v, &Rep::trivial(v.ring(), n - v.n()))
}

/// The identity-coset summand `V → I(V)_n`: the first `dim V` coordinates.
fn inclusion<R: Ring>(ring: &R, dv: usize, total: usize) -> Mat<R> {
    let mut m = Mat::zeros(ring, total, dv);
    for i in 0..dv {
        m.set(i, i, ring.one());
    }
    m
}

fn projection<R: Ring>(ring: &R, dv: usize, total: usize) -> Mat<R> {
    inclusion(ring, dv, total).transpose()
}

/// `cor ∘ i_*` on cochains.
fn shapiro_cocycle<R: Ring>(f: Cocycle<R>, d: usize, n: usize, dv: usize, ivn: &Rep<R>) -> Result<Cocycle<R>> {
    let i = inclusion(ivn.ring(), dv, ivn.dim());
    corestrict(push(f, &i), &young(d, n), &YoungSubgroup::full(n), ivn)
}

/// `π_* ∘ res` on cochains.
fn shapiro_inverse_cocycle<R: Ring>(f: Cocycle<R>, dv: usize, total: usize, ring: &R) -> Cocycle<R> {
    push(f, &projection(ring, dv, total))
}

/// `H^t(S_d × S_{n−d}, V) → H^t(S_n, I(V)_n)` in class coordinates.
pub fn shapiro_map<R: Ring>(j: &CohomologyGroup<R>, gamma_n: &CohomologyGroup<R>, v: &Rep<R>) -> Result<Mat<R>> {
    let (d, n, dv) = (v.n(), gamma_n.group().n(), v.dim());
    let ivn = gamma_n.module().clone();
    j.map_to(gamma_n, |f| shapiro_cocycle(f, d, n, dv, &ivn))
}

pub fn shapiro_inverse_map<R: Ring>(gamma_n: &CohomologyGroup<R>, j: &CohomologyGroup<R>, v: &Rep<R>) -> Result<Mat<R>> {
    let (dv, total) = (v.dim(), gamma_n.module().dim());
    let ring = v.ring().clone();
    gamma_n.map_to(j, |f| Ok(shapiro_inverse_cocycle(f, dv, total, &ring)))
}

/// `Γ^t(I(V))` with `∇_n = Sh_{n−1} ∘ res ∘ Sh_n^{-1}` and the resulting
/// splitting `Γ^t(I(V)) ≅ ker ∇ ⊗ D`.
#[derive(Clone, Debug)]
pub struct InducedConnection<R: Ring> {
    pub gamma: GammaModule<R>,
    pub data: ConnectionData<R>,
    pub decomposition: ConnectionDecomposition,
    /// `2t + d`.
    pub bound: usize,
    /// `ker ∇_n = 0` for every `n > 2t + d` in the window.
    pub kernel_vanishes: bool,
}

impl<R: Ring> InducedConnection<R> {
    /// Generators of the free module all sit in degrees `≤ 2t + d`.
    pub fn generators_bounded(&self) -> bool {
        self.decomposition.kernel_degrees.iter().all(|&k| k <= self.bound)
    }
}

pub fn induced_connection<R: Ring>(v: &Rep<R>, t: usize, n_max: usize) -> Result<InducedConnection<R>> {
    let ring = v.ring();
    if !ring.is_field() {
        return Err(Error::FieldOnly("connections are decomposed over a field".into()));
    }
    let d = v.n();
    let module: FIModuleHandle<R> = induced_fi(v)?.with_n_max(n_max.max(d));
    let gamma = build_gamma(&module, t, n_max)?;
    let top = gamma.window();
    let dv = v.dim();
    let mut nabla = vec![Mat::zeros(ring, 0, gamma.piece(0).dim())];
    for n in 1..=top {
        let (src, tgt) = (gamma.piece(n), gamma.piece(n - 1));
        if n <= d {
            nabla.push(Mat::zeros(ring, tgt.dim(), src.dim()));
            continue;
        }
        let total = src.module().dim();
        let small = tgt.module().clone();
        let m = src.map_to(tgt, |f| {
            let j = shapiro_inverse_cocycle(f, dv, total, ring);
            shapiro_cocycle(j, d, n - 1, dv, &small)
        })?;
        nabla.push(m);
    }
    let data = ConnectionData {
        ring: ring.clone(),
        q: 1,
        dims: gamma.dims(),
        nabla,
        action: gamma.actions().clone(),
    };
    let decomposition = connection_decompose(&data)?;
    let bound = 2 * t + d;
    let kernel_vanishes = decomposition
        .kernel_dims
        .iter()
        .enumerate()
        .all(|(n, &k)| n <= bound || k == 0);
    Ok(InducedConnection {
        gamma,
        data,
        decomposition,
        bound,
        kernel_vanishes,
    })
}

/// Shapiro intertwines the action on `⊕_n H^t(S_d × S_{n−d}, V)` (inflate,
/// corestrict along the second block) with the action on `Γ^t(I(V))`.
#[derive(Clone, Debug, Serialize)]
pub struct ShapiroSquare {
    pub d: usize,
    pub t: usize,
    pub n: usize,
    pub m: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub shapiro_bijective: bool,
    pub commutes: bool,
}

pub fn shapiro_square_check<R: Ring>(v: &Rep<R>, t: usize, n: usize, m: usize) -> Result<ShapiroSquare> {
    let d = v.n();
    if n < d || m < n {
        return Err(Error::invalid("the square needs d ≤ n ≤ m"));
    }
    let dv = v.dim();
    let module = induced_fi(v)?.with_n_max(m);
    let iv_n = module.eval(n)?;
    let iv_m = module.eval(m)?;
    let j_n = cohomology(&young(d, n), &young_module(v, n)?, t, Method::Auto)?;
    let g_n = cohomology(&YoungSubgroup::full(n), &iv_n, t, Method::Auto)?;
    let g_m = cohomology(&YoungSubgroup::full(m), &iv_m, t, Method::Auto)?;
    let sh_n = shapiro_map(&j_n, &g_n, v)?;
    let shapiro_bijective = is_bijective(&sh_n, j_n.subquotient(), g_n.subquotient());

    let tr = module.transition_composite(n, m)?;
    let outer = g_m.module().clone();
    let via_gamma = j_n.map_to(&g_m, |f| {
        let s = shapiro_cocycle(f, d, n, dv, &iv_n)?;
        action_cocycle(s, n, m, &tr, &outer)
    })?;
    let ym = young_module(v, m)?;
    let via_young = j_n.map_to(&g_m, |f| {
        let lifted = inflate::<R>(f, n);
        let moved = corestrict(lifted, &YoungSubgroup::new(&[d, n - d, m - n]), &young(d, m), &ym)?;
        shapiro_cocycle(moved, d, m, dv, &outer)
    })?;
    Ok(ShapiroSquare {
        d,
        t,
        n,
        m,
        source_dim: j_n.dim(),
        target_dim: g_m.dim(),
        shapiro_bijective,
        commutes: g_m.same_map(&via_gamma, &via_young),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::grpcoh::h1_presentation;

    #[test]
    fn trivial_coefficients_in_degree_zero() {
        let f = PrimeField::new(5).unwrap();
        let c = induced_connection(&Rep::trivial(&f, 0), 0, 6).unwrap();
        assert_eq!(c.decomposition.kernel_degrees, vec![0]);
        assert!(c.kernel_vanishes);
    }

    #[test]
    fn degree_one_generators() {
        let f = PrimeField::new(2).unwrap();
        let c = induced_connection(&Rep::trivial(&f, 0), 1, 5).unwrap();
        assert!(c.generators_bounded());
        assert!(c.kernel_vanishes);
        assert_eq!(c.decomposition.kernel_degrees, vec![2]);

        let c = induced_connection(&Rep::trivial(&f, 1), 1, 7).unwrap();
        // Shapiro: H^1(S_n, F_2^n) ≅ H^1(S_{n−1}, F_2)
        let oracle: Vec<usize> = (0..=7)
            .map(|n| if n == 0 { 0 } else { h1_presentation(n - 1, &Rep::trivial(&f, n - 1)).unwrap().dim() })
            .collect();
        assert_eq!(c.gamma.dims(), oracle);
        assert!(c.generators_bounded());
        assert_eq!(c.decomposition.kernel_degrees, vec![3]);
    }

    #[test]
    fn squares_commute() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let s = shapiro_square_check(&Rep::trivial(&f2, 1), 0, 2, 3).unwrap();
        assert!(s.commutes && s.shapiro_bijective);
        let s = shapiro_square_check(&Rep::trivial(&f2, 0), 1, 2, 4).unwrap();
        assert!(s.commutes && s.shapiro_bijective);
        for v in [Rep::trivial(&f3, 2), Rep::sign(&f3, 2)] {
            let s = shapiro_square_check(&v, 1, 3, 4).unwrap();
            assert!(s.commutes && s.shapiro_bijective, "{s:?}");
        }
    }
}
