//! Eventual periodicity of `n ↦ dim H^t(S_n, M_n)` from a claimed onset.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use super::pieces;
use crate::error::{Error, Result};
use crate::exactlin::Ring;
use crate::fimod::{FIMeta, FIModuleHandle};
use crate::grpcoh::{nakaoka_row, NakaokaRow};
use crate::symrep::Partition;

/// Windows sized to the cohomology scale guards.
pub fn default_window(t: usize) -> usize {
    if t <= 1 {
        8
    } else {
        5
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityClaim {
    pub onset: usize,
    pub period: usize,
}

impl fmt::Display for PeriodicityClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "onset={};period={}", self.onset, self.period)
    }
}

/// Smallest power of `p` strictly above `delta`.
fn period_above(p: u64, delta: i64) -> usize {
    let mut q = 1i64;
    while q <= delta {
        q *= p as i64;
    }
    q as usize
}

fn onset(values: &[i64]) -> usize {
    values.iter().cloned().max().unwrap_or(0).max(0) as usize
}

/// `n ≥ max(g + r, 2t + δ)` with period the least `p`-power above `δ`.
pub fn fi_claim(meta: &FIMeta, t: usize, p: u64) -> PeriodicityClaim {
    PeriodicityClaim {
        onset: onset(&[meta.g + meta.r, 2 * t as i64 + meta.delta]),
        period: period_above(p, meta.delta),
    }
}

/// The variant with the extra term `2g`.
pub fn pd_claim(meta: &FIMeta, t: usize, p: u64) -> PeriodicityClaim {
    PeriodicityClaim {
        onset: onset(&[meta.g + meta.r, 2 * meta.g, 2 * t as i64 + meta.delta]),
        period: period_above(p, meta.delta),
    }
}

/// For Specht modules `L_μ`: `n ≥ max(2|μ| + μ_1, 2t + |μ|)`.
pub fn hemmer_claim(mu: &Partition, t: usize, p: u64) -> PeriodicityClaim {
    let d = mu.size() as i64;
    PeriodicityClaim {
        onset: onset(&[2 * d + mu.first() as i64, 2 * t as i64 + d]),
        period: period_above(p, d),
    }
}

/// Trivial coefficients stabilize for `n > 2t`.
pub fn nakaoka_claim(t: usize) -> PeriodicityClaim {
    PeriodicityClaim {
        onset: 2 * t + 1,
        period: 1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicityReport {
    pub source: String,
    pub t: usize,
    pub p: u64,
    pub claim: PeriodicityClaim,
    pub window: usize,
    pub dims: Vec<usize>,
    pub verdict: Verdict,
    pub first_failure: Option<usize>,
    /// Smallest period at most the claimed one seen on the window.
    pub minimal_period: Option<usize>,
    pub truncation: Option<String>,
}

impl PeriodicityReport {
    pub fn from_dims(source: &str, t: usize, p: u64, claim: PeriodicityClaim, dims: Vec<usize>) -> Self {
        let window = dims.len() - 1;
        let holds = |q: usize| (claim.onset..=window.saturating_sub(q)).find(|&n| n + q <= window && dims[n] != dims[n + q]);
        let long_enough = |q: usize| window >= claim.onset + 2 * q;
        let first_failure = holds(claim.period);
        let verdict = match first_failure {
            Some(_) => Verdict::Fail,
            None if long_enough(claim.period) => Verdict::Pass,
            None => Verdict::Inconclusive,
        };
        let minimal_period = (1..=claim.period).find(|&q| long_enough(q) && holds(q).is_none());
        PeriodicityReport {
            source: source.to_string(),
            t,
            p,
            claim,
            window,
            dims,
            verdict,
            first_failure,
            minimal_period,
            truncation: None,
        }
    }

    /// Columns `n, dim, claim, verdict`; the verdict column marks each
    /// degree compared against the one a period later.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,dim,claim,verdict\n");
        for (n, d) in self.dims.iter().enumerate() {
            let q = self.claim.period;
            let status = if n < self.claim.onset || n + q > self.window {
                "-"
            } else if self.dims[n + q] == *d {
                "pass"
            } else {
                "fail"
            };
            let _ = writeln!(s, "{n},{d},{},{status}", self.claim);
        }
        s
    }
}

pub fn periodicity_check<R: Ring>(
    module: &FIModuleHandle<R>,
    t: usize,
    claim: PeriodicityClaim,
    n_max: usize,
) -> Result<PeriodicityReport> {
    let ring = module.ring();
    if !ring.is_field() {
        return Err(Error::FieldOnly("periodicity is read off dimensions".into()));
    }
    let (pieces, truncation) = pieces(module, t, n_max)?;
    let dims = pieces.iter().map(|h| h.dim()).collect();
    let mut report = PeriodicityReport::from_dims(&module.meta().source, t, ring.characteristic(), claim, dims);
    report.truncation = truncation;
    Ok(report)
}

/// Restriction `H^t(S_n) → H^t(S_{n−1})` with trivial coefficients for
/// `1 ≤ n ≤ n_max`, cut at the first degree beyond the scale guards.
pub fn nakaoka_table<R: Ring>(ring: &R, t: usize, n_max: usize) -> Result<(Vec<NakaokaRow>, Option<String>)> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        match nakaoka_row(ring, n, t) {
            Ok(r) => rows.push(r),
            Err(e @ Error::Scale { .. }) => return Ok((rows, Some(format!("table cut at n = {}: {e}", n - 1)))),
            Err(e) => return Err(e),
        }
    }
    Ok((rows, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::fimod::{specht_fi, trivial_fi};

    #[test]
    fn claims_from_metadata() {
        let mu = Partition::new(&[1]).unwrap();
        assert_eq!(hemmer_claim(&mu, 0, 2), PeriodicityClaim { onset: 3, period: 2 });
        assert_eq!(hemmer_claim(&mu, 1, 2), PeriodicityClaim { onset: 3, period: 2 });
        assert_eq!(hemmer_claim(&mu, 1, 3).period, 3);
        assert_eq!(period_above(2, -1), 1);
        assert_eq!(period_above(2, 4), 8);
        assert_eq!(nakaoka_claim(2).onset, 5);
    }

    #[test]
    fn standard_module_invariants_alternate() {
        let f = PrimeField::new(2).unwrap();
        let mu = Partition::new(&[1]).unwrap();
        let m = specht_fi(&f, &mu);
        let r = periodicity_check(&m, 0, hemmer_claim(&mu, 0, 2), 9).unwrap();
        // the all-ones vector lies in S^{(n−1,1)} iff n is even
        let oracle: Vec<usize> = (0..=9).map(|n| m.eval(n).unwrap().fixed_space().cols()).collect();
        assert_eq!(r.dims, oracle);
        assert_eq!(&r.dims[3..], &[0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.minimal_period, Some(2));

        let r = periodicity_check(&m, 1, hemmer_claim(&mu, 1, 2), 8).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn short_windows_are_inconclusive() {
        let f = PrimeField::new(2).unwrap();
        let r = periodicity_check(&trivial_fi(&f), 1, PeriodicityClaim { onset: 3, period: 2 }, 5).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let r = PeriodicityReport::from_dims("x", 0, 2, PeriodicityClaim { onset: 1, period: 1 }, vec![0, 1, 2]);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.first_failure, Some(1));
        assert!(r.to_csv().starts_with("n,dim,claim,verdict\n0,0,onset=1;period=1,-\n"));
    }

    #[test]
    fn nakaoka_stability() {
        let f = PrimeField::new(2).unwrap();
        for t in 0..3 {
            let r = periodicity_check(&trivial_fi(&f), t, nakaoka_claim(t), default_window(t).max(2 * t + 3)).unwrap();
            assert_ne!(r.verdict, Verdict::Fail, "t = {t}");
        }
        let (rows, cut) = nakaoka_table(&f, 2, 5).unwrap();
        assert!(cut.is_none());
        assert!(rows.iter().filter(|r| r.predicted).all(|r| r.bijective));
    }
}
