//! Numbered acceptance suites. Each returns a report naming the result it
//! exercises, how many individual checks ran, and what failed.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dpa::finite::{image_subspace, kernel_subspace};
use crate::dpa::invariants::{
    certificate_at, ell_of_lambda, finite_reduction, ideal_tor1, lambda_le, lambda_max, random_hom,
    random_presentation, reduction_level, RandomPresentationSpec,
};
use crate::dpa::{freeness_certificate, periodicity_certificate, y, DPElement, DPPresentation};
use crate::error::{Error, Result};
use crate::exactlin::{AbelianGroupStructure, Integers, PrimeField, Ring};
use crate::fimod::{induced_fi, specht_fi, trivial_fi};
use crate::gamma::{
    build_gamma, envelope_match_pieces, fi_claim, hemmer_claim, induced_connection, periodicity_check,
    shapiro_square_check, Verdict,
};
use crate::grpcoh::{cohomology, dold_check, nakaoka_row, Method};
use crate::symrep::{Partition, Rep, YoungSubgroup};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub criterion: u8,
    pub suite: &'static str,
    pub reference: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks > 0 && self.failures.is_empty() && self.elapsed_ms <= self.budget_ms
    }

    /// `criterion N [pass|fail] suite: checks, failures (reference)`.
    pub fn line(&self) -> String {
        let status = if self.passed() { "pass" } else { "fail" };
        let mut s = format!(
            "criterion {:>2} {status} {}: {} checks, {} failures, {} ms (budget {} ms) [{}]",
            self.criterion,
            self.suite,
            self.checks,
            self.failures.len(),
            self.elapsed_ms,
            self.budget_ms,
            self.reference
        );
        if self.elapsed_ms > self.budget_ms {
            s.push_str(" over time budget");
        }
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("; first failure: {f}"));
        }
        s
    }
}

struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Errors count as failed checks.
    fn run<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

struct Criterion {
    number: u8,
    suite: &'static str,
    reference: &'static str,
    budget: Duration,
    run: fn(&mut Tally, u64),
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        number: 1,
        suite: "dp-arithmetic",
        reference: "divided power algebra: product rule, derivations, y_i^p = 0",
        budget: Duration::from_secs(10),
        run: dp_arithmetic,
    },
    Criterion {
        number: 2,
        suite: "stability-period",
        reference: "dimension periodicity from epsilon and lambda",
        budget: Duration::from_secs(120),
        run: stability_period,
    },
    Criterion {
        number: 3,
        suite: "inequalities",
        reference: "epsilon and lambda under extensions and maps; Tor_1 of ideals",
        budget: Duration::from_secs(120),
        run: inequalities,
    },
    Criterion {
        number: 4,
        suite: "sphere",
        reference: "cokernel of D[2] -> D[1], x^[0] -> 2x^[1]",
        budget: Duration::from_secs(5),
        run: sphere,
    },
    Criterion {
        number: 5,
        suite: "nakaoka",
        reference: "Nakaoka stability of restriction",
        budget: Duration::from_secs(600),
        run: nakaoka,
    },
    Criterion {
        number: 6,
        suite: "dold",
        reference: "Dold's double coset identity for transfers",
        budget: Duration::from_secs(300),
        run: dold,
    },
    Criterion {
        number: 7,
        suite: "connection",
        reference: "connection on cohomology of induced modules",
        budget: Duration::from_secs(600),
        run: connection,
    },
    Criterion {
        number: 8,
        suite: "hemmer",
        reference: "periodicity of Specht module cohomology",
        budget: Duration::from_secs(900),
        run: hemmer,
    },
    Criterion {
        number: 9,
        suite: "gamma-axiom",
        reference: "divided power module structure on cohomology",
        budget: Duration::from_secs(600),
        run: gamma_axiom,
    },
    Criterion {
        number: 10,
        suite: "shapiro",
        reference: "Shapiro isomorphism commutes with the divided power action",
        budget: Duration::from_secs(300),
        run: shapiro,
    },
];

/// Suite names accepted by [`run_suite`] besides `all` and the numbers.
pub fn suite_names() -> Vec<&'static str> {
    let mut v: Vec<&'static str> = CRITERIA.iter().map(|c| c.suite).collect();
    v.push("dpa");
    v
}

pub fn run_criterion(number: u8, seed: u64) -> Result<SuiteReport> {
    let c = CRITERIA
        .iter()
        .find(|c| c.number == number)
        .ok_or_else(|| Error::invalid(format!("no criterion {number}")))?;
    let mut tally = Tally::new();
    let start = Instant::now();
    (c.run)(&mut tally, seed);
    Ok(SuiteReport {
        criterion: c.number,
        suite: c.suite,
        reference: c.reference,
        checks: tally.checks,
        failures: tally.failures,
        elapsed_ms: start.elapsed().as_millis(),
        budget_ms: c.budget.as_millis(),
    })
}

/// `all`, `dpa` (criteria 1 to 3), a suite name, or a criterion number.
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<SuiteReport>> {
    let numbers: Vec<u8> = match name {
        "all" => (1..=10).collect(),
        "dpa" => vec![1, 2, 3],
        _ => {
            if let Ok(n) = name.parse::<u8>() {
                vec![n]
            } else if let Some(c) = CRITERIA.iter().find(|c| c.suite == name) {
                vec![c.number]
            } else {
                return Err(Error::invalid(format!(
                    "unknown suite '{name}'; expected all, a number 1-10, or one of {}",
                    suite_names().join(", ")
                )));
            }
        }
    };
    numbers.into_iter().map(|n| run_criterion(n, seed)).collect()
}

// ---- 1 ----

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// `x^[a] x^[b] = (a+b)!/(a! b!) x^[a+b]`, with the coefficient from
/// factorials rather than the library's binomials.
fn product_oracle<R: Ring>(ring: &R, f: &DPElement<R>, g: &DPElement<R>) -> DPElement<R> {
    let mut terms = Vec::new();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            let c = factorial(a + b) / (factorial(a) * factorial(b));
            terms.push((a + b, ring.mul(&ring.mul(ca, cb), &ring.from_bigint(&c))));
        }
    }
    DPElement::from_terms(ring, terms)
}

fn random_element<R: Ring>(ring: &R, rng: &mut ChaCha8Rng, max_deg: usize) -> DPElement<R> {
    let nterms = rng.gen_range(0..=3);
    let terms: Vec<(usize, R::Elem)> = (0..nterms)
        .map(|_| (rng.gen_range(0..=max_deg), ring.from_i64(rng.gen_range(-6..=6))))
        .collect();
    DPElement::from_terms(ring, terms)
}

fn arithmetic_round<R: Ring>(ring: &R, rng: &mut ChaCha8Rng, tally: &mut Tally, rounds: usize) {
    let name = ring.name();
    let p = ring.characteristic() as usize;
    for _ in 0..rounds {
        let f = random_element(ring, rng, 10);
        let g = random_element(ring, rng, 10);
        let h = random_element(ring, rng, 10);
        let fg = f.mul(&g);
        tally.check(fg == product_oracle(ring, &f, &g), || format!("{name}: ({f})({g}) = {fg}"));
        tally.check(fg.mul(&h) == f.mul(&g.mul(&h)), || format!("{name}: associativity for {f}, {g}, {h}"));
        tally.check(fg == g.mul(&f), || format!("{name}: commutativity for {f}, {g}"));
        // d and, in characteristic p, d_{p^r} are derivations
        let mut qs = vec![1usize];
        if p > 0 {
            let mut q = p;
            while q <= 30 {
                qs.push(q);
                q *= p;
            }
        }
        let q = qs[rng.gen_range(0..qs.len())];
        let d = |e: &DPElement<R>| e.derive(q).unwrap();
        tally.check(d(&fg) == d(&f).mul(&g).add(&f.mul(&d(&g))), || {
            format!("{name}: Leibniz for d_{q} on {f}, {g}")
        });
    }
}

fn dp_arithmetic(tally: &mut Tally, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in [2u64, 3, 5] {
        let f = PrimeField::new(p).unwrap();
        arithmetic_round(&f, &mut rng, tally, 625);
        let mut i = 0;
        while (p as usize).pow(i) <= 30 {
            let yi = y(&f, i);
            tally.check(yi.pow(p as usize).is_zero(), || format!("y_{i}^{p} ≠ 0 over F_{p}"));
            i += 1;
        }
    }
    arithmetic_round(&Integers, &mut rng, tally, 625);
}

// ---- 2 ----

fn stability_period(tally: &mut Tally, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let spec = RandomPresentationSpec::default();
    for p in [2u64, 3] {
        let f = PrimeField::new(p).unwrap();
        for i in 0..100 {
            let pres = random_presentation(&f, &spec, &mut rng);
            let Some(cert) = tally.run(periodicity_certificate(&pres), || format!("F_{p} #{i}")) else {
                continue;
            };
            let q = cert.period;
            let start = cert.window_start;
            // direct graded pieces over three full periods past the onset
            let direct = (start..start + 3 * q).all(|n| pres.dim(n) == pres.dim(n + q));
            tally.check(cert.confirmed && direct, || format!("F_{p} #{i}: onset {start}, period {q} not confirmed"));
        }
        for d in 0..6 {
            let c = freeness_certificate(&DPPresentation::free(&f, &[d])).unwrap();
            tally.check(c.epsilon == 0 && c.lambda == Some(d as i64), || format!("D[{d}] over F_{p}"));
        }
        let rem = DPPresentation::shifted_y0_quotients(&f);
        if let Some(c) = tally.run(periodicity_certificate(&rem), || format!("quotients by y_0 over F_{p}")) {
            let flat = (0..40).all(|n| rem.dim(n) == 1);
            tally.check(c.epsilon == 1 && flat, || format!("quotients by y_0 over F_{p}: ε = {}", c.epsilon));
        }
    }
}

// ---- 3 ----

fn inequalities(tally: &mut Tally, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let spec = RandomPresentationSpec {
        max_generators: 3,
        max_generator_degree: 4,
        max_entry_degree: 8,
        max_relations: 3,
    };
    for i in 0..100 {
        let p = if i % 2 == 0 { 2u64 } else { 3 };
        let f = PrimeField::new(p).unwrap();
        let a = random_presentation(&f, &spec, &mut rng);
        let b = random_presentation(&f, &spec, &mut rng);
        let s = reduction_level(&a).max(reduction_level(&b));
        let Some(mut nb) = tally.run(finite_reduction(&b, s), || format!("#{i} target reduction")) else {
            continue;
        };
        let Some(ma0) = tally.run(finite_reduction(&a, s), || format!("#{i} source reduction")) else {
            continue;
        };
        nb.pad(ma0.len());
        let Some((ma, map)) = tally.run(random_hom(&a, s, &nb, &mut rng), || format!("#{i} random map")) else {
            continue;
        };
        nb.pad(ma.len());
        let img = image_subspace(&map);
        let ker = ma.sub(&kernel_subspace(&map));
        let im = nb.sub(&img);
        let coker = nb.quotient(&img).module;
        let c = |m| certificate_at(m, None);
        let (cm, cn, ck, ci, cc) = (c(&ma), c(&nb), c(&ker), c(&im), c(&coker));

        // 0 → ker → M → im → 0
        tally.check(
            cm.epsilon <= ck.epsilon.max(ci.epsilon) && lambda_le(cm.lambda, lambda_max(ck.lambda, ci.lambda)),
            || format!("#{i} over F_{p}: extension bound, M {:?}, ker {:?}, im {:?}", (cm.epsilon, cm.lambda), (ck.epsilon, ck.lambda), (ci.epsilon, ci.lambda)),
        );
        tally.check(
            lambda_le(ck.lambda, cm.lambda) && lambda_le(ci.lambda, cm.lambda) && lambda_le(cc.lambda, cn.lambda),
            || format!("#{i} over F_{p}: lambda bound"),
        );
        let bound = cm.epsilon.max(cn.epsilon).max(ell_of_lambda(p, cm.lambda)) + 1;
        tally.check(
            [ck.epsilon, ci.epsilon, cc.epsilon].iter().all(|&e| e <= bound),
            || format!("#{i} over F_{p}: epsilon bound {bound}"),
        );
        // ideals generated in degrees ≤ d
        let d = rng.gen_range(1..=12);
        let ngens = rng.gen_range(1..=3);
        let mut gens: Vec<usize> = (0..ngens).map(|_| rng.gen_range(0..=d)).collect();
        gens.sort();
        gens.dedup();
        let r = ideal_tor1(&f, &gens);
        tally.check(r.holds, || format!("Tor_1 of ({gens:?}) over F_{p}: {:?} > {}", r.max_degree, r.bound));
    }
}

// ---- 4 ----

fn sphere(tally: &mut Tally, _seed: u64) {
    let z = Integers;
    let pres = DPPresentation::sphere(&z);
    let expected: Vec<AbelianGroupStructure> = (2..=50)
        .map(|n| AbelianGroupStructure::new(0, vec![BigInt::from(2 * n - 2)]).unwrap())
        .collect();
    for n in 2..=50 {
        let got = pres.graded_piece(n);
        tally.check(got == expected[n - 2], || format!("degree {n}: {got}"));
    }
    let m = envelope_match_pieces(2, &expected, &pres);
    tally.check(m.start == Some(2), || format!("match starts at {:?}", m.start));
    let f2 = PrimeField::new(2).unwrap();
    match periodicity_certificate(&DPPresentation::sphere(&f2)) {
        Ok(c) => tally.check(c.confirmed && 2 % c.period == 0, || format!("mod 2 period {}", c.period)),
        Err(e) => tally.check(false, || format!("mod 2: {e}")),
    }
}

// ---- 5 ----

fn nakaoka(tally: &mut Tally, _seed: u64) {
    let rows = |tally: &mut Tally, ring_name: &str, n_max: usize, row: &dyn Fn(usize, usize) -> Result<bool>| {
        for t in 0..=2 {
            for n in 2 * t + 1..=n_max {
                if let Some(b) = tally.run(row(n, t), || format!("{ring_name}, n = {n}, t = {t}")) {
                    tally.check(b, || format!("{ring_name}: restriction S_{n} → S_{} not bijective in degree {t}", n - 1));
                }
            }
        }
    };
    for p in [2u64, 3] {
        let f = PrimeField::new(p).unwrap();
        rows(tally, &format!("F_{p}"), 5, &|n, t| Ok(nakaoka_row(&f, n, t)?.bijective));
    }
    rows(tally, "Z", 4, &|n, t| Ok(nakaoka_row(&Integers, n, t)?.bijective));
}

// ---- 6 ----

fn dold(tally: &mut Tally, _seed: u64) {
    for p in [2u64, 3] {
        let f = PrimeField::new(p).unwrap();
        for total in 2..=5 {
            for n in 1..total {
                let m = total - n;
                for (name, module) in [("trivial", Rep::trivial(&f, total)), ("regular", Rep::regular(&f, total))] {
                    for t in 0..=1 {
                        let what = || format!("F_{p}, {name}, n = {n}, m = {m}, t = {t}");
                        if let Some(r) = tally.run(dold_check(&module, n, m, t), what) {
                            tally.check(r.holds, what);
                        }
                    }
                }
            }
        }
    }
}

// ---- 7 ----

fn connection(tally: &mut Tally, _seed: u64) {
    for p in [2u64, 3] {
        let f = PrimeField::new(p).unwrap();
        for (name, v) in [
            ("trivial of S_0", Rep::trivial(&f, 0)),
            ("trivial of S_1", Rep::trivial(&f, 1)),
            ("regular of S_2", Rep::regular(&f, 2)),
        ] {
            for t in 0..=1 {
                let what = || format!("F_{p}, {name}, t = {t}");
                let Some(c) = tally.run(induced_connection(&v, t, 8), what) else {
                    continue;
                };
                tally.check(c.gamma.window() == 8, || format!("{}: window cut to {}", what(), c.gamma.window()));
                tally.check(c.data.check_leibniz().is_ok(), || format!("{}: Leibniz", what()));
                tally.check(c.kernel_vanishes, || format!("{}: ker ∇ above {}", what(), c.bound));
                // dimensions of the free module on ker ∇
                let dims = c.gamma.dims();
                let free_ok = (0..dims.len()).all(|n| {
                    let predicted: usize = c.decomposition.kernel_dims[..=n].iter().sum();
                    predicted == dims[n]
                });
                tally.check(free_ok && c.generators_bounded(), || {
                    format!("{}: dims {dims:?}, generators {:?}", what(), c.decomposition.kernel_degrees)
                });
            }
        }
    }
}

// ---- 8 ----

fn hemmer(tally: &mut Tally, _seed: u64) {
    let f = PrimeField::new(2).unwrap();
    let mu = Partition::new(&[1]).unwrap();
    let m = specht_fi(&f, &mu);
    for (t, n_max) in [(0usize, 12usize), (1, 10)] {
        let claim = hemmer_claim(&mu, t, 2);
        let what = || format!("t = {t}, n ≤ {n_max}");
        if let Some(r) = tally.run(periodicity_check(&m, t, claim, n_max), what) {
            tally.check(r.verdict == Verdict::Pass && r.window == n_max, || {
                format!("{}: {} on dims {:?}", what(), r.verdict, r.dims)
            });
            if t == 0 {
                let oracle: Vec<usize> = (0..=n_max).map(|n| m.eval(n).unwrap().fixed_space().cols()).collect();
                tally.check(r.dims == oracle, || format!("t = 0 dims {:?} vs fixed spaces {oracle:?}", r.dims));
            } else {
                for n in 0..=5 {
                    let bar = m
                        .eval(n)
                        .and_then(|mn| cohomology(&YoungSubgroup::full(n), &mn, 1, Method::Bar))
                        .map(|h| h.dim());
                    if let Some(b) = tally.run(bar, || format!("bar oracle at n = {n}")) {
                        tally.check(b == r.dims[n], || format!("n = {n}: presentation {} vs bar {b}", r.dims[n]));
                    }
                }
            }
            let general = fi_claim(m.meta(), t, 2);
            if let Some(g) = tally.run(periodicity_check(&m, t, general, n_max), what) {
                tally.check(g.verdict == Verdict::Pass, || {
                    format!("{}: general onset {} gives {}", what(), general, g.verdict)
                });
            }
        }
    }
}

// ---- 9 ----

fn gamma_axiom(tally: &mut Tally, _seed: u64) {
    let f = PrimeField::new(2).unwrap();
    let mods = [("A", trivial_fi(&f)), ("I(trivial of S_1)", induced_fi(&Rep::trivial(&f, 1)).unwrap())];
    for (name, m) in mods {
        for t in 0..=1 {
            let what = || format!("{name}, t = {t}");
            if let Some(g) = tally.run(build_gamma(&m, t, 5), what) {
                tally.check(g.window() == 5 && g.check_composition().is_ok(), what);
            }
        }
    }
}

// ---- 10 ----

fn shapiro(tally: &mut Tally, _seed: u64) {
    for p in [2u64, 3] {
        let f = PrimeField::new(p).unwrap();
        for d in 0..=2 {
            for (name, v) in [("trivial", Rep::trivial(&f, d)), ("regular", Rep::regular(&f, d))] {
                for t in 0..=1 {
                    for n in d..=5 {
                        for m in n..=5 - n {
                            let what = || format!("F_{p}, {name} of S_{d}, t = {t}, n = {n}, m = {m}");
                            if let Some(s) = tally.run(shapiro_square_check(&v, t, n, m), what) {
                                tally.check(s.commutes && s.shapiro_bijective, what);
                            }
                        }
                    }
                }
            }
        }
    }
}
