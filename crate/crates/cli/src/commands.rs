use std::fs;
use std::thread;

use serde_json::{json, Value};

use dpcoh::dpa::{freeness_certificate, periodicity_certificate, DPElement, DPPresentation};
use dpcoh::exactlin::{AbelianGroupStructure, Integers, PrimeField, Ring, RingMode};
use dpcoh::fimod::{FIDescriptor, FIModuleHandle};
use dpcoh::gamma::{
    fi_claim, hemmer_claim, nakaoka_claim, nakaoka_table, pd_claim, periodicity_check, PeriodicityClaim, Verdict,
};
use dpcoh::verify::{run_suite, DEFAULT_SEED};
use dpcoh::Error;

use crate::config::{ClaimSpec, Experiment, ExperimentConfig, Source};
use crate::output::{csv_row, text_table, write_atomic, Format, Outcome, Status};

const SCHEMA_VERSION: u32 = 1;

/// A rendered result before it is routed to a file or stdout.
struct Rendered {
    body: String,
    status: Status,
    notes: Vec<String>,
}

impl Rendered {
    fn pass(body: String) -> Self {
        Rendered {
            body,
            status: Status::Pass,
            notes: Vec::new(),
        }
    }
}

/// Library errors on bad input or out-of-range requests are usage errors;
/// anything else means a computed check failed.
fn lib_err(e: Error) -> Outcome {
    let status = match e {
        Error::Leibniz(_) | Error::NotEquivariant(_) => Status::Fail,
        _ => Status::Usage,
    };
    Outcome {
        status,
        stdout: String::new(),
        stderr: vec![format!("error: {e}")],
    }
}

fn schema(name: &str) -> String {
    format!("dpcoh.{name}/{SCHEMA_VERSION}")
}

fn json_body(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

macro_rules! with_ring {
    ($mode:expr, $r:ident => $body:expr) => {
        match $mode {
            RingMode::Integers => {
                let $r = &Integers;
                $body
            }
            RingMode::Prime(p) => {
                let $r = &PrimeField::new(p).map_err(lib_err)?;
                $body
            }
        }
    };
}

/// Runs every config on its own thread; stdout bodies keep config order.
pub fn run_all(configs: &[ExperimentConfig]) -> Outcome {
    let results: Vec<Outcome> = thread::scope(|s| {
        let handles: Vec<_> = configs.iter().map(|c| s.spawn(move || run_one(c))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Outcome::usage("experiment panicked"))).collect()
    });
    let mut total = Outcome {
        status: Status::Pass,
        stdout: String::new(),
        stderr: Vec::new(),
    };
    for r in results {
        total.merge(r);
    }
    total
}

fn run_one(c: &ExperimentConfig) -> Outcome {
    let rendered = match execute(c) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let mut out = Outcome {
        status: rendered.status,
        stdout: String::new(),
        stderr: rendered.notes,
    };
    match &c.output {
        Some(path) => {
            if let Err(e) = write_atomic(path, &rendered.body) {
                return Outcome::usage(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => out.stdout = rendered.body,
    }
    out
}

fn execute(c: &ExperimentConfig) -> Result<Rendered, Outcome> {
    let e = c.validate().map_err(Outcome::usage)?;
    let ring = c.ring.unwrap_or(RingMode::Integers);
    match e {
        Experiment::DpMul => with_ring!(ring, r => dp_mul(r, c)),
        Experiment::DpHilbert => with_ring!(ring, r => dp_hilbert(r, c)),
        Experiment::DpEpsilon => {
            let f = ring.field().map_err(lib_err)?;
            dp_epsilon(&f, c)
        }
        Experiment::DpPeriod => {
            let f = ring.field().map_err(lib_err)?;
            dp_period(&f, c)
        }
        Experiment::DpShow => with_ring!(ring, r => Ok(Rendered::pass(presentation(r, c)?.to_text()))),
        Experiment::GammaTable => {
            let f = ring
                .field()
                .map_err(|_| Outcome::usage("error: gamma table reads periodicity off dimensions; pass a prime with --p"))?;
            gamma_table(&f, c)
        }
        Experiment::Nakaoka => with_ring!(ring, r => nakaoka(r, c)),
        Experiment::Verify => verify(c),
    }
}

fn format_or(c: &ExperimentConfig, default: Format) -> Format {
    c.format.unwrap_or(default)
}

// ---- dp ----

fn dp_mul<R: Ring>(r: &R, c: &ExperimentConfig) -> Result<Rendered, Outcome> {
    let (a, b) = c.operands.as_ref().unwrap();
    let x = DPElement::parse(r, a).map_err(|e| Outcome::usage(format!("first operand: {e}")))?;
    let y = DPElement::parse(r, b).map_err(|e| Outcome::usage(format!("second operand: {e}")))?;
    let prod = x.mul(&y);
    Ok(Rendered::pass(match format_or(c, Format::Text) {
        Format::Text => format!("{prod}\n"),
        Format::Csv => format!("ring,a,b,product\n{}", csv_row(&[r.name(), x.to_string(), y.to_string(), prod.to_string()])),
        Format::Json => json_body(json!({
            "schema": schema("dp-mul"),
            "ring": r.name(),
            "a": x.to_string(),
            "b": y.to_string(),
            "product": prod.to_string(),
        })),
    }))
}

fn builtin<R: Ring>(r: &R, name: &str) -> Result<DPPresentation<R>, Outcome> {
    let (tag, arg) = name.split_once(':').unwrap_or((name, ""));
    let number = |s: &str| s.trim().parse::<usize>().map_err(|_| Outcome::usage(format!("builtin '{name}': bad number '{s}'")));
    match tag {
        "sphere" => Ok(DPPresentation::sphere(r)),
        "augmentation" => Ok(DPPresentation::augmentation_quotient(r, number(arg)?)),
        "y0-quotients" if r.is_field() => Ok(DPPresentation::shifted_y0_quotients(r)),
        "y0-quotients" => Err(Outcome::usage("builtin 'y0-quotients' needs a prime ring")),
        "free" => {
            let degrees = arg.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
            Ok(DPPresentation::free(r, &degrees))
        }
        _ => Err(Outcome::usage(format!(
            "unknown builtin '{name}' (sphere, augmentation:N, y0-quotients, free:d1,d2,...)"
        ))),
    }
}

fn presentation<R: Ring>(r: &R, c: &ExperimentConfig) -> Result<DPPresentation<R>, Outcome> {
    match c.source.as_ref().unwrap() {
        Source::File(path) => {
            let text = fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
            DPPresentation::parse(r, &text).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
        }
        Source::Builtin(name) => builtin(r, name),
        Source::Missing => Err(Outcome::usage("give --file or --builtin")),
    }
}

fn dp_hilbert<R: Ring>(r: &R, c: &ExperimentConfig) -> Result<Rendered, Outcome> {
    let pres = presentation(r, c)?;
    let (lo, hi) = c.range.unwrap_or((0, 20));
    let mut notes = Vec::new();
    if let Some(w) = pres.window().filter(|&w| w < hi) {
        notes.push(format!("note: the presentation is only meaningful through degree {w}"));
    }
    let rows: Vec<(usize, AbelianGroupStructure)> = (lo..=hi).map(|n| (n, pres.graded_piece(n))).collect();
    let body = match format_or(c, Format::Csv) {
        Format::Csv => {
            let mut s = String::from("n,structure\n");
            for (n, g) in &rows {
                s.push_str(&csv_row(&[n.to_string(), g.render(r)]));
            }
            s
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = rows.iter().map(|(n, g)| vec![n.to_string(), g.render(r)]).collect();
            text_table(&["n", "M_n"], &rows)
        }
        Format::Json => json_body(json!({
            "schema": schema("dp-hilbert"),
            "ring": r.name(),
            "window": pres.window(),
            "rows": rows.iter().map(|(n, g)| json!({
                "n": n,
                "structure": g.render(r),
                "free_rank": g.free_rank,
                "invariant_factors": g.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Rendered {
        body,
        status: Status::Pass,
        notes,
    })
}

fn dp_epsilon(f: &PrimeField, c: &ExperimentConfig) -> Result<Rendered, Outcome> {
    let pres = presentation(f, c)?;
    let cert = freeness_certificate(&pres).map_err(lib_err)?;
    let opt = |v: Option<i64>| v.map_or("-inf".to_string(), |x| x.to_string());
    let g = cert.g_r.map_or("none".to_string(), |g| g.to_string());
    let degrees: Vec<String> = cert.basis_degrees.iter().map(|d| d.to_string()).collect();
    let body = match format_or(c, Format::Csv) {
        Format::Csv => format!(
            "p,epsilon,g_epsilon,lambda,basis_degrees\n{}",
            csv_row(&[cert.p.to_string(), cert.epsilon.to_string(), g, opt(cert.lambda), degrees.join(" ")])
        ),
        Format::Text => format!(
            "p = {}\nepsilon = {}\ng_epsilon = {g}\nlambda = {}\nbasis degrees over D_>=epsilon: {}\n",
            cert.p,
            cert.epsilon,
            opt(cert.lambda),
            degrees.join(" ")
        ),
        Format::Json => json_body(json!({
            "schema": schema("dp-epsilon"),
            "p": cert.p,
            "epsilon": cert.epsilon,
            "g_epsilon": cert.g_r,
            "lambda": cert.lambda,
            "basis_degrees": cert.basis_degrees,
            "consistent": cert.check(),
        })),
    };
    let mut r = Rendered::pass(body);
    if !cert.check() {
        r.status = Status::Fail;
        r.notes.push("check failed: top generator degrees are inconsistent across levels".into());
    }
    Ok(r)
}

fn dp_period(f: &PrimeField, c: &ExperimentConfig) -> Result<Rendered, Outcome> {
    let pres = presentation(f, c)?;
    let cert = periodicity_certificate(&pres).map_err(lib_err)?;
    let onset = cert.onset.map_or("-inf".to_string(), |x| x.to_string());
    let verdict = if cert.confirmed { "pass" } else { "fail" };
    let body = match format_or(c, Format::Csv) {
        Format::Csv => {
            let mut s = String::from("n,dim,onset,period,verdict\n");
            for (i, &(n, d)) in cert.dims.iter().enumerate() {
                let status = match cert.dims.get(i + cert.period) {
                    Some(&(_, e)) if e == d => "pass",
                    Some(_) => "fail",
                    None => "-",
                };
                s.push_str(&csv_row(&[n.to_string(), d.to_string(), onset.clone(), cert.period.to_string(), status.into()]));
            }
            s.push_str(&csv_row(&["all".into(), String::new(), onset.clone(), cert.period.to_string(), verdict.into()]));
            s
        }
        Format::Text => {
            let dims: Vec<String> = cert.dims.iter().map(|(_, d)| d.to_string()).collect();
            format!(
                "onset = {onset}\nperiod = {} (epsilon = {}, minimal on window = {})\nwindow = {}..{}\ndims = {}\nconfirmed = {}\n",
                cert.period,
                cert.epsilon,
                cert.minimal_period,
                cert.window_start,
                cert.window_end,
                dims.join(" "),
                cert.confirmed
            )
        }
        Format::Json => {
            let mut v = serde_json::to_value(&cert).expect("certificate serializes");
            v["schema"] = json!(schema("dp-period"));
            json_body(v)
        }
    };
    let mut r = Rendered::pass(body);
    if let Some(w) = cert.certified_through.filter(|&w| w < cert.window_end) {
        r.notes.push(format!("note: the presentation is only meaningful through degree {w}"));
    }
    if !cert.confirmed {
        r.status = Status::Fail;
    }
    Ok(r)
}

// ---- gamma ----

fn reference(spec: ClaimSpec) -> &'static str {
    match spec {
        ClaimSpec::Hemmer => "periodicity of Specht module cohomology",
        ClaimSpec::Fi => "periodicity of FI-module cohomology",
        ClaimSpec::Pd => "periodicity of FI-module cohomology with the 2g onset",
        ClaimSpec::Nakaoka => "Nakaoka stability of restriction",
        ClaimSpec::Explicit(_) => "user-supplied onset and period",
    }
}

fn resolve_claim(
    spec: ClaimSpec,
    desc: &FIDescriptor,
    module: &FIModuleHandle<PrimeField>,
    t: usize,
    p: u64,
) -> Result<PeriodicityClaim, Outcome> {
    Ok(match spec {
        ClaimSpec::Hemmer => match desc {
            FIDescriptor::Specht(mu) => hemmer_claim(mu, t, p),
            _ => return Err(Outcome::usage("config key 'claim': hemmer applies to specht modules only")),
        },
        ClaimSpec::Fi => fi_claim(module.meta(), t, p),
        ClaimSpec::Pd => pd_claim(module.meta(), t, p),
        ClaimSpec::Nakaoka => nakaoka_claim(t),
        ClaimSpec::Explicit(c) => c,
    })
}

fn gamma_table(f: &PrimeField, c: &ExperimentConfig) -> Result<Rendered, Outcome> {
    let desc = c.module.as_ref().unwrap();
    let (t, nmax) = (c.t.unwrap_or(0), c.nmax.unwrap());
    let module = FIModuleHandle::from_descriptor(f, desc).map_err(lib_err)?.with_n_max(nmax);
    let spec = c.claim.unwrap_or(match desc {
        FIDescriptor::Specht(_) => ClaimSpec::Hemmer,
        FIDescriptor::Trivial => ClaimSpec::Nakaoka,
        _ => ClaimSpec::Fi,
    });
    let claim = resolve_claim(spec, desc, &module, t, f.p())?;
    let report = periodicity_check(&module, t, claim, nmax).map_err(lib_err)?;
    let mut notes = Vec::new();
    if let Some(cut) = &report.truncation {
        let msg = format!(
            "nmax = {nmax} exceeds the scale guards for t = {t}; maximum feasible window is {} ({cut})",
            report.window
        );
        if !c.truncate {
            return Err(Outcome::usage(format!("error: {msg}; rerun with --nmax {} or --truncate", report.window)));
        }
        notes.push(format!("note: {msg}"));
    }
    let refr = reference(spec);
    let q = claim.period;
    let row_status = |n: usize| {
        if n < claim.onset || n + q > report.window {
            "-"
        } else if report.dims[n] == report.dims[n + q] {
            "pass"
        } else {
            "fail"
        }
    };
    let body = match format_or(c, Format::Csv) {
        Format::Csv => {
            let mut s = String::from("n,dim,claim,verdict,reference\n");
            for (n, d) in report.dims.iter().enumerate() {
                s.push_str(&csv_row(&[n.to_string(), d.to_string(), claim.to_string(), row_status(n).into(), refr.into()]));
            }
            s.push_str(&csv_row(&["all".into(), String::new(), claim.to_string(), report.verdict.to_string(), refr.into()]));
            s
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = report
                .dims
                .iter()
                .enumerate()
                .map(|(n, d)| vec![n.to_string(), d.to_string(), row_status(n).to_string()])
                .collect();
            let mut s = format!(
                "H^{t}(S_n, M_n) over {} for M = {desc}\n",
                f.name()
            );
            s.push_str(&text_table(&["n", "dim", "period check"], &rows));
            s.push_str(&format!("claim {claim} ({refr}): {}\n", report.verdict));
            if let Some(m) = report.minimal_period {
                s.push_str(&format!("smallest period on the window: {m}\n"));
            }
            s
        }
        Format::Json => json_body(json!({
            "schema": schema("gamma-table"),
            "ring": f.name(),
            "module": desc.to_string(),
            "t": t,
            "claim": {"name": spec.to_string(), "onset": claim.onset, "period": claim.period},
            "reference": refr,
            "window": report.window,
            "dims": report.dims,
            "verdict": report.verdict,
            "first_failure": report.first_failure,
            "minimal_period": report.minimal_period,
            "truncation": report.truncation,
        })),
    };
    Ok(Rendered {
        body,
        status: if report.verdict == Verdict::Fail { Status::Fail } else { Status::Pass },
        notes,
    })
}

fn nakaoka<R: Ring>(r: &R, c: &ExperimentConfig) -> Result<Rendered, Outcome> {
    let (t, nmax) = (c.t.unwrap(), c.nmax.unwrap());
    let (rows, cut) = nakaoka_table(r, t, nmax).map_err(lib_err)?;
    let mut notes = Vec::new();
    if let Some(cut) = cut {
        let top = rows.last().map_or(0, |row| row.n);
        let msg = format!("nmax = {nmax} exceeds the scale guards for t = {t}; maximum feasible window is {top} ({cut})");
        if !c.truncate {
            return Err(Outcome::usage(format!("error: {msg}; rerun with --nmax {top} or --truncate")));
        }
        notes.push(format!("note: {msg}"));
    }
    // the smallest k with restriction bijective for every n ≥ k in the table
    let stable_from = rows.iter().rev().take_while(|row| row.bijective).last().map(|row| row.n);
    let failed = rows.iter().any(|row| row.predicted && !row.bijective);
    let refr = reference(ClaimSpec::Nakaoka);
    let summary = match stable_from {
        Some(k) => format!("iso for n ≥ {k} (checked n ≤ {})", rows.last().map_or(0, |row| row.n)),
        None => "not an isomorphism at the top of the table".to_string(),
    };
    let status_of = |predicted: bool, bijective: bool| match (predicted, bijective) {
        (true, true) => "pass",
        (true, false) => "fail",
        _ => "-",
    };
    let body = match format_or(c, Format::Csv) {
        Format::Csv => {
            let mut s = String::from("n,t,source,target,bijective,predicted,verdict,reference\n");
            for row in &rows {
                s.push_str(&csv_row(&[
                    row.n.to_string(),
                    row.t.to_string(),
                    row.source.clone(),
                    row.target.clone(),
                    row.bijective.to_string(),
                    row.predicted.to_string(),
                    status_of(row.predicted, row.bijective).into(),
                    refr.into(),
                ]));
            }
            notes.push(summary);
            s
        }
        Format::Text => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    vec![
                        row.n.to_string(),
                        row.source.clone(),
                        row.target.clone(),
                        if row.bijective { "iso" } else { "no" }.into(),
                        status_of(row.predicted, row.bijective).into(),
                    ]
                })
                .collect();
            let mut s = format!("restriction H^{t}(S_n; {}) -> H^{t}(S_(n-1); {})\n", r.name(), r.name());
            s.push_str(&text_table(&["n", "H^t(S_n)", "H^t(S_(n-1))", "restriction", "n > 2t check"], &table));
            s.push_str(&format!("{summary} [{refr}]\n"));
            s
        }
        Format::Json => json_body(json!({
            "schema": schema("nakaoka"),
            "ring": r.name(),
            "t": t,
            "reference": refr,
            "rows": rows,
            "stable_from": stable_from,
            "verdict": if failed { "fail" } else { "pass" },
        })),
    };
    Ok(Rendered {
        body,
        status: if failed { Status::Fail } else { Status::Pass },
        notes,
    })
}

// ---- verify ----

fn verify(c: &ExperimentConfig) -> Result<Rendered, Outcome> {
    let seed = c.seed.unwrap_or(DEFAULT_SEED);
    let reports = run_suite(c.suite.as_deref().unwrap(), seed).map_err(lib_err)?;
    let failed = reports.iter().any(|r| !r.passed());
    let verdict = |ok: bool| if ok { "pass" } else { "fail" };
    // timings go to stderr so that the body is reproducible
    let notes = reports
        .iter()
        .map(|r| format!("criterion {}: {} ms (budget {} ms)", r.criterion, r.elapsed_ms, r.budget_ms))
        .collect();
    let body = match format_or(c, Format::Text) {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!(
                    "criterion {:>2} {} {}: {} checks, {} failures [{}]\n",
                    r.criterion,
                    verdict(r.passed()),
                    r.suite,
                    r.checks,
                    r.failures.len(),
                    r.reference
                ));
                for f in r.failures.iter().take(5) {
                    s.push_str(&format!("    {f}\n"));
                }
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            s.push_str(&format!("{passed}/{} suites passed (seed {seed})\n", reports.len()));
            s
        }
        Format::Csv => {
            let mut s = String::from("criterion,suite,checks,failures,verdict,reference\n");
            for r in &reports {
                s.push_str(&csv_row(&[
                    r.criterion.to_string(),
                    r.suite.into(),
                    r.checks.to_string(),
                    r.failures.len().to_string(),
                    verdict(r.passed()).into(),
                    r.reference.into(),
                ]));
            }
            s
        }
        Format::Json => json_body(json!({
            "schema": schema("verify"),
            "seed": seed,
            "suites": reports.iter().map(|r| json!({
                "criterion": r.criterion,
                "suite": r.suite,
                "reference": r.reference,
                "checks": r.checks,
                "failures": r.failures,
                "verdict": verdict(r.passed()),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Rendered {
        body,
        status: if failed { Status::Fail } else { Status::Pass },
        notes,
    })
}
