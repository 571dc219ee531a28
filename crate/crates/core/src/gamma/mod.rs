//! `Γ^t(M) = ⊕_n H^t(S_n, M_n)` as a truncated graded module over the
//! divided power algebra, with connections on induced modules and
//! periodicity checks.

pub mod periodicity;
pub mod shapiro;

use std::collections::BTreeMap;
use std::thread;

use serde::Serialize;

pub use periodicity::{
    default_window, fi_claim, hemmer_claim, nakaoka_claim, nakaoka_table, pd_claim, periodicity_check,
    PeriodicityClaim, PeriodicityReport, Verdict,
};
pub use shapiro::{
    induced_connection, shapiro_inverse_map, shapiro_map, shapiro_square_check, InducedConnection, ShapiroSquare,
};

use crate::dpa::DPPresentation;
use crate::error::{Error, Result};
use crate::exactlin::{AbelianGroupStructure, Mat, Ring};
use crate::fimod::FIModuleHandle;
use crate::grpcoh::{cohomology, corestrict, inflate, push, Cocycle, CohomologyGroup, Method};
use crate::symrep::{Rep, YoungSubgroup};

/// Degrees `0..=N` of `Γ^t(M)` with `act[(n, m)]` the action of `x^[m−n]`.
#[derive(Clone, Debug)]
pub struct GammaModule<R: Ring> {
    ring: R,
    t: usize,
    source: String,
    pieces: Vec<CohomologyGroup<R>>,
    action: BTreeMap<(usize, usize), Mat<R>>,
    truncation: Option<String>,
}

/// `x^[m−n] · f`: inflate to `S_n × S_{m−n}`, push along the transition
/// `M_n → M_m`, corestrict to `S_m`.
pub fn action_cocycle<R: Ring>(f: Cocycle<R>, n: usize, m: usize, transition: &Mat<R>, target: &Rep<R>) -> Result<Cocycle<R>> {
    let lifted = push(inflate::<R>(f, n), transition);
    corestrict(lifted, &YoungSubgroup::new(&[n, m - n]), &YoungSubgroup::full(m), target)
}

/// `H^t(S_n, M_n)` for `n = 0..=n_max`, computed concurrently. Stops at the
/// first degree that exceeds a scale guard and reports why.
pub(crate) fn pieces<R: Ring>(
    module: &FIModuleHandle<R>,
    t: usize,
    n_max: usize,
) -> Result<(Vec<CohomologyGroup<R>>, Option<String>)> {
    let results: Vec<Result<CohomologyGroup<R>>> = thread::scope(|s| {
        let handles: Vec<_> = (0..=n_max)
            .map(|n| {
                s.spawn(move || {
                    let mn = module.eval(n)?;
                    cohomology(&YoungSubgroup::full(n), &mn, t, Method::Auto)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("cohomology worker panicked")).collect()
    });
    let mut out = Vec::new();
    for (n, r) in results.into_iter().enumerate() {
        match r {
            Ok(h) => out.push(h),
            Err(e @ Error::Scale { .. }) => {
                if n == 0 {
                    return Err(e);
                }
                return Ok((out, Some(format!("window cut at n = {}: {e}", n - 1))));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((out, None))
}

/// Builds the pieces and every action map, then verifies the composition
/// law `act_{m,l} ∘ act_{n,m} = C(l−n, m−n) · act_{n,l}`.
pub fn build_gamma<R: Ring>(module: &FIModuleHandle<R>, t: usize, n_max: usize) -> Result<GammaModule<R>> {
    let (pieces, truncation) = pieces(module, t, n_max)?;
    let top = pieces.len() - 1;
    let rows: Vec<Result<Vec<((usize, usize), Mat<R>)>>> = thread::scope(|s| {
        let pieces = &pieces;
        let handles: Vec<_> = (0..=top)
            .map(|m| {
                s.spawn(move || {
                    let target = module.eval(m)?;
                    let mut row = Vec::new();
                    for n in 0..=m {
                        let tr = module.transition_composite(n, m)?;
                        let a = pieces[n].map_to(&pieces[m], |f| action_cocycle(f, n, m, &tr, &target))?;
                        row.push(((n, m), a));
                    }
                    Ok(row)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("action worker panicked")).collect()
    });
    let mut action = BTreeMap::new();
    for row in rows {
        action.extend(row?);
    }
    let g = GammaModule {
        ring: module.ring().clone(),
        t,
        source: module.meta().source.clone(),
        pieces,
        action,
        truncation,
    };
    g.check_composition()?;
    Ok(g)
}

impl<R: Ring> GammaModule<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn t(&self) -> usize {
        self.t
    }
    pub fn source(&self) -> &str {
        &self.source
    }
    /// Top degree actually computed.
    pub fn window(&self) -> usize {
        self.pieces.len() - 1
    }
    pub fn truncation(&self) -> Option<&str> {
        self.truncation.as_deref()
    }
    pub fn piece(&self, n: usize) -> &CohomologyGroup<R> {
        &self.pieces[n]
    }
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }
    pub fn structures(&self) -> Vec<AbelianGroupStructure> {
        self.pieces.iter().map(|p| p.structure()).collect()
    }
    /// Multiplication by `x^[m−n]` from degree `n` to degree `m`.
    pub fn act(&self, n: usize, m: usize) -> Option<&Mat<R>> {
        self.action.get(&(n, m))
    }
    pub fn actions(&self) -> &BTreeMap<(usize, usize), Mat<R>> {
        &self.action
    }

    pub fn check_composition(&self) -> Result<()> {
        let r = &self.ring;
        let top = self.window();
        for n in 0..=top {
            let id = Mat::identity(r, self.pieces[n].dim());
            if !self.pieces[n].same_map(&self.action[&(n, n)], &id) {
                return Err(Error::invalid(format!("act_{{{n},{n}}} is not the identity")));
            }
            for m in n..=top {
                for l in m..=top {
                    let lhs = self.action[&(m, l)].mul(&self.action[&(n, m)]);
                    let c = r.binomial((l - n) as u64, (m - n) as u64);
                    let rhs = self.action[&(n, l)].scale(&c);
                    if !self.pieces[l].same_map(&lhs, &rhs) {
                        return Err(Error::invalid(format!(
                            "composition law fails for degrees {n} ≤ {m} ≤ {l}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Degrees where a windowed sequence of pieces agrees with a presentation.
#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeMatch {
    /// First degree of the longest agreeing suffix; `None` if the last
    /// compared degree disagrees.
    pub start: Option<usize>,
    pub first: usize,
    pub last: usize,
    pub mismatches: Vec<usize>,
}

/// Compares `pieces[i]`, standing in degree `first + i`, with the graded
/// pieces of `p` (dimensions over a field, invariant factors over `Z`).
pub fn envelope_match_pieces<R: Ring>(
    first: usize,
    pieces: &[AbelianGroupStructure],
    p: &DPPresentation<R>,
) -> EnvelopeMatch {
    let mut last = first + pieces.len();
    if let Some(w) = p.window() {
        last = last.min(w + 1);
    }
    let mismatches: Vec<usize> = (first..last).filter(|&n| pieces[n - first] != p.graded_piece(n)).collect();
    let start = match mismatches.last() {
        None if last > first => Some(first),
        None => None,
        Some(&n) if n + 1 < last => Some(n + 1),
        Some(_) => None,
    };
    EnvelopeMatch {
        start,
        first,
        last: last.saturating_sub(1),
        mismatches,
    }
}

pub fn envelope_match<R: Ring>(g: &GammaModule<R>, p: &DPPresentation<R>) -> Result<EnvelopeMatch> {
    if g.ring() != p.ring() {
        return Err(Error::ModeMismatch(format!(
            "Γ over {} against a presentation over {}",
            g.ring().name(),
            p.ring().name()
        )));
    }
    Ok(envelope_match_pieces(0, &g.structures(), p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Integers, PrimeField};
    use crate::fimod::{induced_fi, point_fi, trivial_fi};
    use num_bigint::BigInt;

    #[test]
    fn divided_powers_in_degree_zero() {
        let g = build_gamma(&trivial_fi(&Integers), 0, 6).unwrap();
        assert_eq!(g.dims(), vec![1; 7]);
        for n in 0..=6 {
            for m in n..=6 {
                let a = g.act(n, m).unwrap();
                let b = crate::exactlin::big_binomial(m as u64, n as u64);
                assert_eq!(a, &Mat::from_rows(&Integers, vec![vec![b]], 1));
            }
        }
        let d = DPPresentation::free(&Integers, &[0]);
        assert_eq!(envelope_match(&g, &d).unwrap().start, Some(0));
    }

    #[test]
    fn point_module_is_the_augmentation_quotient() {
        let f = PrimeField::new(3).unwrap();
        let g = build_gamma(&point_fi(0, &Rep::trivial(&f, 0)).unwrap(), 0, 5).unwrap();
        assert_eq!(g.dims(), vec![1, 0, 0, 0, 0, 0]);
        let p = DPPresentation::augmentation_quotient(&f, 5);
        assert_eq!(envelope_match(&g, &p).unwrap().start, Some(0));
    }

    #[test]
    fn permutation_module_invariants() {
        let f = PrimeField::new(2).unwrap();
        let m = induced_fi(&Rep::trivial(&f, 1)).unwrap();
        let g = build_gamma(&m, 0, 6).unwrap();
        let oracle: Vec<usize> = (0..=6).map(|n| m.eval(n).unwrap().fixed_space().cols()).collect();
        assert_eq!(g.dims(), oracle);
        assert_eq!(g.dims(), vec![0, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn composition_law_in_degree_one_and_two() {
        let f = PrimeField::new(2).unwrap();
        let g = build_gamma(&trivial_fi(&f), 1, 6).unwrap();
        assert_eq!(g.dims(), vec![0, 0, 1, 1, 1, 1, 1]);
        let g = build_gamma(&induced_fi(&Rep::trivial(&f, 1)).unwrap(), 2, 4).unwrap();
        assert!(g.truncation().is_none());
    }

    #[test]
    fn scale_guard_truncates() {
        let f = PrimeField::new(2).unwrap();
        let g = build_gamma(&trivial_fi(&f), 2, 7).unwrap();
        assert_eq!(g.window(), 5);
        assert!(g.truncation().is_some());
    }

    #[test]
    fn sphere_envelope() {
        let z = Integers;
        let pieces: Vec<AbelianGroupStructure> = (2..=50)
            .map(|n| AbelianGroupStructure::new(0, vec![BigInt::from(2 * n - 2)]).unwrap())
            .collect();
        let m = envelope_match_pieces(2, &pieces, &DPPresentation::sphere(&z));
        assert_eq!(m.start, Some(2));
        assert!(m.mismatches.is_empty());
        let mut off = pieces.clone();
        off[10] = AbelianGroupStructure::free(1);
        assert_eq!(envelope_match_pieces(2, &off, &DPPresentation::sphere(&z)).start, Some(13));
    }
}
