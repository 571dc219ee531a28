//! Cochain-level maps between the cohomology of Young subgroups.

use std::sync::Arc;

use serde::Serialize;

use super::cochain::{fit, Cocycle};
use super::cohomology::{cohomology, CohomologyGroup, Method};
use crate::error::{Error, Result};
use crate::exactlin::{Mat, Ring};
use crate::symrep::{Perm, Rep, YoungSubgroup};

/// The same cochain seen on a subgroup; arguments are padded.
pub fn restrict<R: Ring>(f: Cocycle<R>) -> Cocycle<R> {
    f
}

/// Pull-back along the projection of `H × S_rest` onto `H`, where `H` acts
/// on the first `keep` points.
pub fn inflate<R: Ring>(f: Cocycle<R>, keep: usize) -> Cocycle<R> {
    Arc::new(move |args: &[Perm]| {
        let cut: Vec<Perm> = args
            .iter()
            .map(|g| {
                let im = &g.images()[..keep.min(g.n())];
                Perm::from_images(im.to_vec()).expect("argument does not preserve the kept points")
            })
            .collect();
        f(&cut)
    })
}

/// Post-composition with an equivariant coefficient map.
pub fn push<R: Ring>(f: Cocycle<R>, phi: &Mat<R>) -> Cocycle<R> {
    let phi = phi.clone();
    Arc::new(move |args: &[Perm]| phi.mul_vec(&f(args)))
}

/// Conjugation `H^t(K, M) → H^t(zKz^{-1}, M)`:
/// `f ↦ (h_1, …) ↦ z·f(z^{-1} h_1 z, …)`.
pub fn conjugate<R: Ring>(f: Cocycle<R>, z: &Perm, module: &Rep<R>) -> Result<Cocycle<R>> {
    let n = module.n();
    let z = fit(z, n);
    let zinv = z.inverse();
    let zm = module.matrix(&z)?;
    Ok(Arc::new(move |args: &[Perm]| {
        let conj: Vec<Perm> = args.iter().map(|h| zinv.compose(&fit(h, n)).compose(&z)).collect();
        zm.mul_vec(&f(&conj))
    }))
}

/// Corestriction from `K` to `G ⊇ K` on `G`-module coefficients:
/// `(cor f)(g_1, …, g_t) = Σ_r r^{-1}·f(h_1, h_1^{-1}h_2, …)` with
/// `h_j = ρ(r g_1 ⋯ g_j)`, `r` over the fixed representatives of `K\G`.
pub fn corestrict<R: Ring>(f: Cocycle<R>, k: &YoungSubgroup, g: &YoungSubgroup, module: &Rep<R>) -> Result<Cocycle<R>> {
    let n = g.n();
    let reps = k.right_coset_reps_in(g)?;
    let mut inv_mats = Vec::new();
    for r in &reps {
        inv_mats.push(module.matrix(&r.inverse())?);
    }
    let k = k.clone();
    let ring = module.ring().clone();
    let dim = module.dim();
    Ok(Arc::new(move |args: &[Perm]| {
        let mut out = vec![ring.zero(); dim];
        for (r, rinv) in reps.iter().zip(&inv_mats) {
            let mut prefix = r.clone();
            let mut prev = Perm::identity(n);
            let mut hs = Vec::with_capacity(args.len());
            for a in args {
                prefix = prefix.compose(&fit(a, n));
                let h = k.rho(&prefix);
                hs.push(prev.inverse().compose(&h));
                prev = h;
            }
            let v = rinv.mul_vec(&f(&hs));
            for (o, x) in out.iter_mut().zip(&v) {
                ring.add_assign(o, x);
            }
        }
        out
    }))
}

/// Matrix of restriction between two computed groups on the same
/// coefficients; the target subgroup may live on fewer points.
pub fn restriction<R: Ring>(src: &CohomologyGroup<R>, tgt: &CohomologyGroup<R>) -> Result<Mat<R>> {
    nested(tgt.group(), src.group())?;
    src.map_to(tgt, |f| Ok(restrict::<R>(f)))
}

/// Matrix of corestriction from `src` (on `K`) to `tgt` (on `G ⊇ K`).
pub fn corestriction<R: Ring>(src: &CohomologyGroup<R>, tgt: &CohomologyGroup<R>) -> Result<Mat<R>> {
    let (k, g) = (src.group().clone(), tgt.group().clone());
    let module = tgt.module().clone();
    src.map_to(tgt, |f| corestrict(f, &k, &g, &module))
}

/// Checks `sub ⊆ sup`, padding `sub` to the points of `sup`.
fn nested(sub: &YoungSubgroup, sup: &YoungSubgroup) -> Result<()> {
    if sub.n() > sup.n() {
        return Err(Error::invalid("subgroup lives on more points"));
    }
    if sub.generators().iter().all(|&i| sup.has_generator(i)) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{:?} is not contained in {:?}",
            sub.blocks(),
            sup.blocks()
        )))
    }
}

/// Dold's identity for a `k[S_{n+m}]`-module `M`: on `H^t(S_n × S_m, M)`,
/// `res ∘ cor` (middle) equals `cor ∘ res` through `S_n × S_{m−1} × S_1`
/// (top) plus `cor ∘ ζ^* ∘ res` through `S_{n−1} × S_1 × S_m` (bottom), all
/// landing in `H^t(S_{n+m−1} × S_1, M)`.
#[derive(Clone, Debug, Serialize)]
pub struct DoldReport {
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub holds: bool,
}

/// `ζ = (0, …, n−2, n+m−1, n−1, …, n+m−2)` in one-line notation.
pub fn dold_zeta(n: usize, m: usize) -> Perm {
    let mut im: Vec<usize> = (0..n - 1).collect();
    im.push(n + m - 1);
    im.extend(n - 1..n + m - 1);
    Perm::from_images(im).unwrap()
}

pub fn dold_check<R: Ring>(module: &Rep<R>, n: usize, m: usize, t: usize) -> Result<DoldReport> {
    if n == 0 || m == 0 || module.n() != n + m {
        return Err(Error::invalid("Dold's identity needs n, m ≥ 1 and a module on n + m points"));
    }
    let y = |b: &[usize]| YoungSubgroup::new(b);
    let method = Method::Auto;
    let src = cohomology(&y(&[n, m]), module, t, method)?;
    let whole = y(&[n + m]);
    let tgt = cohomology(&y(&[n + m - 1, 1]), module, t, method)?;
    let top_mid = y(&[n, m - 1, 1]);
    let bot_second = y(&[n - 1, m, 1]);
    let target_group = tgt.group().clone();
    let zeta = dold_zeta(n, m);
    let middle = src.map_to(&tgt, |f| corestrict(f, src.group(), &whole, module))?;
    let top = src.map_to(&tgt, |f| corestrict(f, &top_mid, &target_group, module))?;
    // restriction to S_{n−1} × S_1 × S_m is the identity on cochains
    let bottom = src.map_to(&tgt, |f| {
        let c = conjugate(f, &zeta, module)?;
        corestrict(c, &bot_second, &target_group, module)
    })?;
    let holds = tgt.same_map(&middle, &top.add(&bottom));
    Ok(DoldReport {
        n,
        m,
        t,
        source_dim: src.dim(),
        target_dim: tgt.dim(),
        holds,
    })
}

/// Restriction `H^t(S_n, k) → H^t(S_{n−1}, k)` with trivial coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct NakaokaRow {
    pub n: usize,
    pub t: usize,
    pub source: String,
    pub target: String,
    pub bijective: bool,
    /// Whether the stable range `n > 2t` predicts a bijection.
    pub predicted: bool,
}

pub fn nakaoka_row<R: Ring>(ring: &R, n: usize, t: usize) -> Result<NakaokaRow> {
    if n == 0 {
        return Err(Error::invalid("restriction needs n ≥ 1"));
    }
    let big = cohomology(&YoungSubgroup::full(n), &Rep::trivial(ring, n), t, Method::Auto)?;
    let small = cohomology(&YoungSubgroup::full(n - 1), &Rep::trivial(ring, n - 1), t, Method::Auto)?;
    let map = restriction(&big, &small)?;
    Ok(NakaokaRow {
        n,
        t,
        source: big.structure().render(ring),
        target: small.structure().render(ring),
        bijective: crate::exactlin::is_bijective(&map, big.subquotient(), small.subquotient()),
        predicted: n > 2 * t,
    })
}
