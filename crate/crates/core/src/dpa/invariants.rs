//! `ε`, `g_r`, `λ` and periodicity for finitely presented modules over
//! `D ⊗ F_p`, computed exactly through finite reductions.

use serde::Serialize;

use super::element::DPElement;
use super::finite::{column_basis, complement, image_subspace, kernel_subspace, FinModule, GradedMap, Quotient};
use super::presentation::DPPresentation;
use crate::error::{Error, Result};
use crate::exactlin::{ell, Mat, PrimeField, Ring};

/// Re-expresses a presentation over `F_p`; fails over `Z`.
pub fn to_prime_field<R: Ring>(pres: &DPPresentation<R>) -> Result<DPPresentation<PrimeField>> {
    let ring = pres.ring();
    if !ring.is_field() {
        return Err(Error::FieldOnly(
            "epsilon and lambda are only defined over a field of characteristic p".into(),
        ));
    }
    let f = PrimeField::new(ring.characteristic())?;
    let mut out = DPPresentation::new(&f);
    for g in pres.generators() {
        out.add_generator(&g.id, g.degree)?;
    }
    for rel in pres.relations() {
        let terms: Vec<(usize, u64)> = rel
            .terms
            .iter()
            .map(|(g, c)| (*g, f.from_bigint(&ring.to_bigint(c))))
            .collect();
        out.add_relation(rel.degree, &terms)?;
    }
    out.set_window(pres.window());
    Ok(out)
}

/// Smallest `s` with every nonzero entry degree `< p^s`.
pub fn reduction_level(pres: &DPPresentation<PrimeField>) -> u32 {
    let p = pres.ring().p() as usize;
    match pres.max_entry_degree() {
        None => 0,
        Some(m) => {
            let mut s = 0;
            while p.pow(s) <= m {
                s += 1;
            }
            s
        }
    }
}

/// `M̄ = M ⊗_D D_{<s}` as the quotient of the free `D_{<s}`-module on the
/// generators, stored on at least `len` degrees.
pub fn finite_reduction_full(pres: &DPPresentation<PrimeField>, s: u32, len: usize) -> Result<Quotient> {
    let f = pres.ring();
    let p = f.p() as usize;
    if s < reduction_level(pres) {
        return Err(Error::DegreeTooHigh {
            degree: pres.max_entry_degree().unwrap_or(0),
            s,
        });
    }
    let degrees: Vec<usize> = pres.generators().iter().map(|g| g.degree).collect();
    let mut free = FinModule::free(f, 0, s, &degrees);
    free.pad(len);
    let mut gens = free.zero_subspace();
    for rel in pres.relations().iter().filter(|r| !r.terms.is_empty()) {
        let e = rel.degree;
        let basis = FinModule::free_basis(p, 0, s, &degrees, e);
        let mut v = vec![f.zero(); basis.len()];
        for (g, c) in &rel.terms {
            let pos = basis
                .iter()
                .position(|&(i, _)| i == *g)
                .expect("entry degree below p^s");
            v[pos] = *c;
        }
        let col = Mat::from_columns(f, basis.len(), &[v]);
        gens[e] = gens[e].hstack(&col);
    }
    let rels = free.span_closure(&gens);
    Ok(free.quotient(&rels))
}

pub fn finite_reduction(pres: &DPPresentation<PrimeField>, s: u32) -> Result<FinModule> {
    Ok(finite_reduction_full(pres, s, 0)?.module)
}

/// Freeness data of a module `M` over `D_{≥r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessCertificate {
    /// The level the basis below refers to.
    pub r: u32,
    /// Degrees of a basis over `D_{≥r}`, ascending with multiplicity.
    pub basis_degrees: Vec<usize>,
    pub g_r: Option<usize>,
    /// `g_r + 1 − p^r`; `None` for the zero module.
    pub lambda: Option<i64>,
    pub epsilon: u32,
    pub p: u64,
    /// The finite reduction level `s₀` the computation ran at.
    pub level: u32,
    /// `(r, g_r)` for every `r` in `[ε, s₀]`.
    pub top_degrees: Vec<(u32, Option<usize>)>,
}

impl FreenessCertificate {
    /// Internal consistency: `λ = g_r + 1 − p^r` and
    /// `g_s = p^s − p^r + g_r` for all attainable `r ≤ s`.
    pub fn check(&self) -> bool {
        let p = self.p as i64;
        let lam = self.g_r.map(|g| g as i64 + 1 - p.pow(self.r));
        if lam != self.lambda {
            return false;
        }
        for &(r, gr) in &self.top_degrees {
            for &(s, gs) in &self.top_degrees {
                if r > s {
                    continue;
                }
                let ok = match (gr, gs) {
                    (None, None) => true,
                    (Some(a), Some(b)) => b as i64 == p.pow(s) - p.pow(r) + a as i64,
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// The predicted `dim M_n` from the basis over `D_{≥r}`.
    pub fn predicted_dim(&self, n: usize) -> usize {
        let q = (self.p as usize).pow(self.r);
        self.basis_degrees
            .iter()
            .filter(|&&b| b <= n && (n - b) % q == 0)
            .count()
    }
}

fn degrees_multiset(dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .enumerate()
        .flat_map(|(n, &d)| std::iter::repeat(n).take(d))
        .collect()
}

/// Certificate of the base change of a finite `D_{[lo,hi)}`-module `m`,
/// with the basis reported at level `r` (`ε ≤ r ≤ hi`).
pub fn certificate_at(m: &FinModule, r: Option<u32>) -> FreenessCertificate {
    let (lo, hi) = m.levels();
    let p = m.p() as u64;
    let epsilon = (lo..=hi).find(|&r| m.is_free_over(r)).unwrap_or(hi);
    let r = r.unwrap_or(epsilon).max(epsilon);
    let top_degrees: Vec<(u32, Option<usize>)> =
        (epsilon..=hi).map(|t| (t, m.top_generator_degree(t))).collect();
    let ind = m.indecomposables(r);
    let g_r = m.top_generator_degree(r);
    FreenessCertificate {
        r,
        basis_degrees: degrees_multiset(&ind),
        g_r,
        lambda: g_r.map(|g| g as i64 + 1 - (p as i64).pow(r)),
        epsilon,
        p,
        level: hi,
        top_degrees,
    }
}

/// Exact `ε(M)`, `g_ε(M)` and `λ(M)`.
pub fn freeness_certificate<R: Ring>(pres: &DPPresentation<R>) -> Result<FreenessCertificate> {
    let pf = to_prime_field(pres)?;
    let m = finite_reduction(&pf, reduction_level(&pf))?;
    Ok(certificate_at(&m, None))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityCertificate {
    pub onset: Option<i64>,
    pub period: usize,
    pub epsilon: u32,
    /// `(n, dim M_n)` computed from the presentation matrix.
    pub dims: Vec<(usize, usize)>,
    pub window_start: usize,
    pub window_end: usize,
    /// Periodicity and the basis-count formula both agree with `dims`.
    pub confirmed: bool,
    /// Smallest period seen on the window; not claimed beyond it.
    pub minimal_period: usize,
    /// Degrees past this are not meaningful (windowed relation families).
    pub certified_through: Option<usize>,
}

fn periodic_on(dims: &[(usize, usize)], q: usize, from: usize) -> bool {
    dims.iter().all(|&(n, d)| {
        n < from || dims.iter().find(|&&(m, _)| m == n + q).map_or(true, |&(_, e)| e == d)
    })
}

/// Onset `λ(M)` and period `p^{ε(M)}`, confirmed directly on
/// `λ ≤ n < λ + 4 p^ε`.
pub fn periodicity_certificate<R: Ring>(pres: &DPPresentation<R>) -> Result<PeriodicityCertificate> {
    let pf = to_prime_field(pres)?;
    let cert = freeness_certificate(&pf)?;
    let period = (cert.p as usize).pow(cert.epsilon);
    let start = cert.lambda.map_or(0, |l| l.max(0) as usize);
    let end = start + 4 * period - 1;
    let dims: Vec<(usize, usize)> = (0..=end).map(|n| (n, pf.dim(n))).collect();
    let eps_cert = FreenessCertificate {
        r: cert.epsilon,
        ..cert.clone()
    };
    let formula_ok = dims.iter().all(|&(n, d)| eps_cert.predicted_dim(n) == d);
    let confirmed = formula_ok && periodic_on(&dims, period, start);
    let minimal_period = (0..=cert.epsilon)
        .map(|e| (cert.p as usize).pow(e))
        .find(|&q| periodic_on(&dims, q, start))
        .unwrap_or(period);
    Ok(PeriodicityCertificate {
        onset: cert.lambda,
        period,
        epsilon: cert.epsilon,
        dims: dims.into_iter().filter(|&(n, _)| n >= start).collect(),
        window_start: start,
        window_end: end,
        confirmed,
        minimal_period,
        certified_through: pres.window(),
    })
}

/// A degree-preserving map `⊕ D_{≥r}[d_i] → ⊕ D_{≥r}[e_t]`.
#[derive(Clone, Debug)]
pub struct FreeMap {
    pub field: PrimeField,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    /// `entries[t][i]`: coefficient of target generator `t` in the image of
    /// source generator `i`; homogeneous of degree `d_i − e_t` or zero.
    pub entries: Vec<Vec<DPElement<PrimeField>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapOp {
    Kernel,
    Cokernel,
    Image,
}

#[derive(Clone, Debug)]
pub struct MapResult {
    /// The finite `D_{[r,s)}`-module whose base change is the answer.
    pub module: FinModule,
    /// Basis over `D_{≥s}` (`r`-field equal to `s`), plus `ε`, `λ`.
    pub certificate: FreenessCertificate,
    /// A presentation over `D`, available when `r = 0`.
    pub presentation: Option<DPPresentation<PrimeField>>,
}

/// Kernel, cokernel or image of `f` with entries in `D_{[r,s)}`.
pub fn map_operation(f: &FreeMap, r: u32, s: u32, op: MapOp) -> Result<MapResult> {
    let field = &f.field;
    let p = field.p() as usize;
    if r > s {
        return Err(Error::invalid(format!("need r ≤ s, got r = {r}, s = {s}")));
    }
    if f.entries.len() != f.target.len() || f.entries.iter().any(|row| row.len() != f.source.len()) {
        return Err(Error::invalid("entry matrix shape does not match the generator lists"));
    }
    // validate entries; collect (t, i, degree, coeff)
    let mut terms = Vec::new();
    for (t, row) in f.entries.iter().enumerate() {
        for (i, e) in row.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let Some(a) = e.homogeneous_degree() else {
                return Err(Error::invalid(format!("entry ({t}, {i}) is not homogeneous")));
            };
            if f.source[i] < f.target[t] || a != f.source[i] - f.target[t] {
                return Err(Error::invalid(format!(
                    "entry ({t}, {i}) has degree {a}, expected {} − {}",
                    f.source[i], f.target[t]
                )));
            }
            if a >= p.pow(s) {
                return Err(Error::DegreeTooHigh { degree: a, s });
            }
            if a % p.pow(r) != 0 {
                return Err(Error::invalid(format!(
                    "entry ({t}, {i}) = x^[{a}] is not in D_[{r}, {s}); lower r"
                )));
            }
            terms.push((t, i, a, e.coeff(a)));
        }
    }
    let mut src = FinModule::free(field, r, s, &f.source);
    let mut tgt = FinModule::free(field, r, s, &f.target);
    let len = src.len().max(tgt.len());
    src.pad(len);
    tgt.pad(len);
    let map: GradedMap = (0..len)
        .map(|n| {
            let sb = FinModule::free_basis(p, r, s, &f.source, n);
            let tb = FinModule::free_basis(p, r, s, &f.target, n);
            let mut m = Mat::zeros(field, tb.len(), sb.len());
            for (col, &(i, k)) in sb.iter().enumerate() {
                for &(t, ii, a, c) in &terms {
                    if ii != i {
                        continue;
                    }
                    if let Some(row) = tb.iter().position(|&b| b == (t, k + a)) {
                        let v = field.mul(&c, &field.binomial((k + a) as u64, k as u64));
                        let cur = *m.get(row, col);
                        m.set(row, col, field.add(&cur, &v));
                    }
                }
            }
            m
        })
        .collect();
    debug_assert!(src.is_linear_map(&map, &tgt));
    let module = match op {
        MapOp::Kernel => src.sub(&kernel_subspace(&map)),
        MapOp::Image => tgt.sub(&image_subspace(&map)),
        MapOp::Cokernel => tgt.quotient(&image_subspace(&map)).module,
    };
    let mut certificate = certificate_at(&module, Some(s));
    certificate.r = s;
    let presentation = if r == 0 {
        Some(presentation_of_finite(&module))
    } else {
        None
    };
    Ok(MapResult {
        module,
        certificate,
        presentation,
    })
}

/// A minimal presentation over `D` of `m ⊗_{D_{<s}} D`, for `m` over
/// `D_{[0,s)}`. Generators are taken lowest degree first.
pub fn presentation_of_finite(m: &FinModule) -> DPPresentation<PrimeField> {
    let (lo, hi) = m.levels();
    assert_eq!(lo, 0, "presentations need the full algebra D_<s");
    let field = m.field().clone();
    let p = m.p();
    let ideal = m.ideal_image(0);
    let mut gen_vecs: Vec<(usize, Vec<u64>)> = Vec::new();
    for (n, sub) in ideal.iter().enumerate() {
        let (_, e) = complement(&column_basis(sub));
        for v in e.columns() {
            gen_vecs.push((n, v));
        }
    }
    let degrees: Vec<usize> = gen_vecs.iter().map(|(d, _)| *d).collect();
    let mut free = FinModule::free(&field, 0, hi, &degrees);
    let mut mm = m.clone();
    let len = free.len().max(mm.len());
    free.pad(len);
    mm.pad(len);
    let cover: GradedMap = (0..len)
        .map(|n| {
            let basis = FinModule::free_basis(p, 0, hi, &degrees, n);
            let cols: Vec<Vec<u64>> = basis
                .iter()
                .map(|&(i, k)| {
                    let (d, v) = &gen_vecs[i];
                    mm.x_action(k, *d).expect("k < p^s").mul_vec(v)
                })
                .collect();
            Mat::from_columns(&field, mm.dim(n), &cols)
        })
        .collect();
    let ker = kernel_subspace(&cover);
    let kmod = free.sub(&ker);
    let kideal = kmod.ideal_image(0);
    let mut pres = DPPresentation::new(&field);
    for (i, d) in degrees.iter().enumerate() {
        pres.add_generator(&format!("g{i}"), *d).unwrap();
    }
    for (e, sub) in kideal.iter().enumerate() {
        let (_, comp) = complement(&column_basis(sub));
        let basis = FinModule::free_basis(p, 0, hi, &degrees, e);
        for c in comp.columns() {
            let w = ker[e].mul_vec(&c);
            let terms: Vec<(usize, u64)> = basis
                .iter()
                .zip(w)
                .filter(|(_, v)| *v != 0)
                .map(|(&(i, _), v)| (i, v))
                .collect();
            pres.add_relation(e, &terms).unwrap();
        }
    }
    pres
}

/// A uniformly random element of `Hom_D(M, N)_0`, as the degreewise map
/// `M̄ → N̄` of finite reductions at level `s`. `n` must be stored on at
/// least as many degrees as `M̄`; the map is returned on `n.len()` degrees.
pub fn random_hom<G: rand::Rng>(
    m: &DPPresentation<PrimeField>,
    s: u32,
    n: &FinModule,
    rng: &mut G,
) -> Result<(FinModule, GradedMap)> {
    let field = m.ring().clone();
    let p = field.p() as usize;
    let q = finite_reduction_full(m, s, n.len())?;
    let degrees: Vec<usize> = m.generators().iter().map(|g| g.degree).collect();
    // unknowns: image u_i ∈ N_{d_i} of each generator
    let offsets: Vec<usize> = degrees
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += n.dim(d);
            Some(o)
        })
        .collect();
    let nvars = degrees.iter().map(|&d| n.dim(d)).sum::<usize>();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for rel in m.relations() {
        let e = rel.degree;
        let mut block = Mat::zeros(&field, n.dim(e), nvars);
        for (g, c) in &rel.terms {
            let d = degrees[*g];
            let x = n.x_action(e - d, d)?.scale(c);
            for a in 0..x.rows() {
                for b in 0..x.cols() {
                    let cur = *block.get(a, offsets[*g] + b);
                    block.set(a, offsets[*g] + b, field.add(&cur, x.get(a, b)));
                }
            }
        }
        for a in 0..block.rows() {
            rows.push(block.row(a).to_vec());
        }
    }
    let system = Mat::from_rows(&field, rows, nvars);
    let kernel = system.kernel();
    let mut u = vec![0u64; nvars];
    for c in kernel.columns() {
        let a = rng.gen_range(0..field.p());
        for (x, y) in u.iter_mut().zip(c) {
            *x = field.add(x, &field.mul(&a, &y));
        }
    }
    let len = q.module.len();
    let f: GradedMap = (0..len)
        .map(|deg| {
            let basis = FinModule::free_basis(p, 0, s, &degrees, deg);
            let cols: Vec<Vec<u64>> = basis
                .iter()
                .map(|&(i, k)| {
                    let d = degrees[i];
                    let ui = u[offsets[i]..offsets[i] + n.dim(d)].to_vec();
                    n.x_action(k, d).expect("k < p^s").mul_vec(&ui)
                })
                .collect();
            Mat::from_columns(&field, n.dim(deg), &cols).mul(&q.section[deg])
        })
        .collect();
    Ok((q.module, f))
}

/// Parameters for [`random_presentation`].
#[derive(Clone, Debug)]
pub struct RandomPresentationSpec {
    pub max_generators: usize,
    pub max_generator_degree: usize,
    /// Entry degrees are `≤` this.
    pub max_entry_degree: usize,
    pub max_relations: usize,
}

impl Default for RandomPresentationSpec {
    fn default() -> Self {
        RandomPresentationSpec {
            max_generators: 4,
            max_generator_degree: 6,
            max_entry_degree: 26,
            max_relations: 4,
        }
    }
}

pub fn random_presentation<G: rand::Rng>(
    field: &PrimeField,
    spec: &RandomPresentationSpec,
    rng: &mut G,
) -> DPPresentation<PrimeField> {
    let mut pres = DPPresentation::new(field);
    let ngens = rng.gen_range(1..=spec.max_generators);
    for i in 0..ngens {
        let d = rng.gen_range(0..=spec.max_generator_degree);
        pres.add_generator(&format!("g{i}"), d).unwrap();
    }
    let degrees: Vec<usize> = pres.generators().iter().map(|g| g.degree).collect();
    let nrels = rng.gen_range(0..=spec.max_relations);
    for _ in 0..nrels {
        let lo = *degrees.iter().min().unwrap();
        let hi = degrees.iter().max().unwrap() + spec.max_entry_degree;
        let e = rng.gen_range(lo..=hi);
        let mut terms = Vec::new();
        for (i, &d) in degrees.iter().enumerate() {
            if d <= e && e - d <= spec.max_entry_degree && rng.gen_bool(0.6) {
                terms.push((i, rng.gen_range(1..field.p())));
            }
        }
        if !terms.is_empty() {
            pres.add_relation(e, &terms).unwrap();
        }
    }
    pres
}

/// `λ(a) ≤ λ(b)` with the zero module's `λ` treated as `−∞`.
pub fn lambda_le(a: Option<i64>, b: Option<i64>) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

pub fn lambda_max(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(y)),
    }
}

/// `ℓ(λ)`, with `ℓ` of the zero module taken as 0.
pub fn ell_of_lambda(p: u64, lambda: Option<i64>) -> u32 {
    lambda.map_or(0, |l| ell(p, l))
}

#[derive(Clone, Debug, Serialize)]
pub struct TorReport {
    pub generator_degrees: Vec<usize>,
    pub d: usize,
    /// `(n, dim Tor_1(k, I)_n)` for the nonzero degrees.
    pub tor_dims: Vec<(usize, usize)>,
    pub max_degree: Option<usize>,
    pub bound: i64,
    pub holds: bool,
}

/// `Tor_1^D(k, I)` for `I = (x^[a_1], …, x^[a_m])`, from the kernel `K` of the
/// cover `⊕ D[a_i] → I` as `(K ∩ D_+F) / D_+K`.
pub fn ideal_tor1(field: &PrimeField, degrees: &[usize]) -> TorReport {
    let p = field.p() as usize;
    let d = degrees.iter().cloned().max().unwrap_or(0);
    let s = ell(p as u64, d as i64 + 1);
    let mut free = FinModule::free(field, 0, s, degrees);
    let mut ring_mod = FinModule::free(field, 0, s, &[0]);
    let len = free.len().max(ring_mod.len());
    free.pad(len);
    ring_mod.pad(len);
    let cover: GradedMap = (0..len)
        .map(|n| {
            let sb = FinModule::free_basis(p, 0, s, degrees, n);
            let mut m = Mat::zeros(field, ring_mod.dim(n), sb.len());
            if ring_mod.dim(n) == 1 {
                for (col, &(_, k)) in sb.iter().enumerate() {
                    m.set(0, col, field.binomial(n as u64, k as u64));
                }
            }
            m
        })
        .collect();
    let ker = kernel_subspace(&cover);
    let kmod = free.sub(&ker);
    let fideal = free.ideal_image(0);
    let kideal = kmod.ideal_image(0);
    let mut tor_dims = Vec::new();
    for n in 0..len {
        let a = ker[n].cols();
        let b = fideal[n].cols();
        let sum = column_basis(&ker[n].hstack(&fideal[n])).cols();
        let inter = a + b - sum;
        let dim = inter - kideal[n].cols();
        if dim > 0 {
            tor_dims.push((n, dim));
        }
    }
    let max_degree = tor_dims.last().map(|&(n, _)| n);
    let bound = d as i64 - 1 + (p as i64).pow(ell(p as u64, d as i64) + 1);
    TorReport {
        generator_degrees: degrees.to_vec(),
        d,
        holds: max_degree.map_or(true, |m| m as i64 <= bound),
        tor_dims,
        max_degree,
        bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Integers;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shifted_free_module() {
        let f = PrimeField::new(3).unwrap();
        for d in 0..5 {
            let c = freeness_certificate(&DPPresentation::free(&f, &[d])).unwrap();
            assert_eq!(c.epsilon, 0);
            assert_eq!(c.lambda, Some(d as i64));
            assert!(c.check());
        }
    }

    #[test]
    fn remark_counterexample() {
        for p in [2u64, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            let pres = DPPresentation::shifted_y0_quotients(&f);
            let c = freeness_certificate(&pres).unwrap();
            assert_eq!(c.epsilon, 1);
            assert_eq!(c.lambda, Some(0));
            let per = periodicity_certificate(&pres).unwrap();
            assert!(per.confirmed);
            assert_eq!(per.period, p as usize);
            assert_eq!(per.minimal_period, 1);
            assert!(per.dims.iter().all(|&(_, d)| d == 1));
        }
    }

    #[test]
    fn integers_rejected() {
        let err = freeness_certificate(&DPPresentation::sphere(&Integers)).unwrap_err();
        assert!(matches!(err, Error::FieldOnly(_)));
    }

    #[test]
    fn sphere_mod_two_is_two_periodic() {
        let f = PrimeField::new(2).unwrap();
        let per = periodicity_certificate(&DPPresentation::sphere(&f)).unwrap();
        assert!(per.confirmed);
        assert_eq!(2 % per.period, 0);
        assert!(periodic_on(&per.dims, 2, per.window_start));
    }

    #[test]
    fn zero_map_kernel_is_free() {
        let f = PrimeField::new(2).unwrap();
        let map = FreeMap {
            field: f.clone(),
            source: vec![0],
            target: vec![0],
            entries: vec![vec![DPElement::zero(&f)]],
        };
        let res = map_operation(&map, 0, 1, MapOp::Kernel).unwrap();
        let pres = res.presentation.unwrap();
        assert_eq!(pres.generators().len(), 1);
        assert!(pres.relations().is_empty());
        assert_eq!(res.certificate.epsilon, 0);
        let too_high = FreeMap {
            field: f.clone(),
            source: vec![4],
            target: vec![0],
            entries: vec![vec![DPElement::x(&f, 4)]],
        };
        assert!(matches!(
            map_operation(&too_high, 0, 2, MapOp::Cokernel),
            Err(Error::DegreeTooHigh { .. })
        ));
    }

    #[test]
    fn sphere_cokernel_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let map = FreeMap {
            field: f.clone(),
            source: vec![2],
            target: vec![1],
            entries: vec![vec![DPElement::monomial(&f, 1, 2)]],
        };
        let res = map_operation(&map, 0, 1, MapOp::Cokernel).unwrap();
        let pres = res.presentation.unwrap();
        let direct = DPPresentation::sphere(&f);
        for n in 0..30 {
            assert_eq!(pres.dim(n), direct.dim(n), "degree {n}");
            assert_eq!(res.certificate.predicted_dim(n), direct.dim(n));
        }
    }

    #[test]
    fn presentation_of_reduction_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..10 {
                let pres = random_presentation(&f, &RandomPresentationSpec::default(), &mut rng);
                let m = finite_reduction(&pres, reduction_level(&pres)).unwrap();
                let again = presentation_of_finite(&m);
                for n in 0..40 {
                    assert_eq!(again.dim(n), pres.dim(n));
                }
            }
        }
    }

    #[test]
    fn random_hom_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = PrimeField::new(2).unwrap();
        let spec = RandomPresentationSpec {
            max_entry_degree: 7,
            ..Default::default()
        };
        for _ in 0..10 {
            let a = random_presentation(&f, &spec, &mut rng);
            let b = random_presentation(&f, &spec, &mut rng);
            let s = reduction_level(&a).max(reduction_level(&b));
            let mut nb = finite_reduction(&b, s).unwrap();
            let la = finite_reduction(&a, s).unwrap().len();
            nb.pad(la);
            let (ma, map) = random_hom(&a, s, &nb, &mut rng).unwrap();
            let mut nb2 = nb.clone();
            nb2.pad(ma.len());
            assert!(ma.is_linear_map(&map, &nb2));
        }
    }

    #[test]
    fn tor_of_principal_ideals() {
        let f = PrimeField::new(2).unwrap();
        // I = D: no relations
        assert!(ideal_tor1(&f, &[0]).tor_dims.is_empty());
        // I = (x^[1]) over F_2: kernel generated by x^[1] g
        let r = ideal_tor1(&f, &[1]);
        assert_eq!(r.tor_dims, vec![(2, 1)]);
        assert!(r.holds);
    }
}
