use dpcoh::exactlin::{Mat, PrimeField, Ring};
use dpcoh::fimod::{induced_fi, trivial_fi};
use dpcoh::gamma::{build_gamma, induced_connection, PeriodicityClaim, PeriodicityReport, Verdict};
use dpcoh::grpcoh::{cohomology, corestriction, h1_presentation, restriction, Method};
use dpcoh::symrep::{Rep, YoungSubgroup};
use proptest::prelude::*;

fn module(f: &PrimeField, kind: usize, n: usize) -> Rep<PrimeField> {
    match kind {
        0 => Rep::trivial(f, n),
        1 => Rep::sign(f, n),
        2 => Rep::points(f, n),
        _ => Rep::regular(f, n),
    }
}

fn blocks(n: usize, cut: usize) -> YoungSubgroup {
    let c = cut % (n + 1);
    YoungSubgroup::new(&[c, n - c])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coboundaries_are_cycles_and_classify_to_zero(
        p in prop::sample::select(vec![2u64, 3]), n in 2usize..4, kind in 0usize..4, t in 0usize..3, cut in 0usize..4,
    ) {
        let f = PrimeField::new(p).unwrap();
        let m = module(&f, kind, n);
        let h = cohomology(&blocks(n, cut), &m, t, Method::Bar).unwrap();
        let b = h.model().coboundaries();
        for col in b.columns() {
            prop_assert!(h.subquotient().contains(&col));
            let class = h.classify(&h.model().evaluator(&col)).unwrap();
            prop_assert!(class.iter().all(|x| f.is_zero(x)));
        }
        for i in 0..h.dim() {
            let class = h.classify(&h.generator_cocycle(i)).unwrap();
            let mut e = vec![f.zero(); h.dim()];
            e[i] = f.one();
            prop_assert_eq!(h.normalize(&class), e);
        }
    }

    #[test]
    fn presentation_agrees_with_bar(p in prop::sample::select(vec![2u64, 3]), n in 2usize..5, kind in 0usize..3) {
        let f = PrimeField::new(p).unwrap();
        let m = module(&f, kind, n);
        let a = h1_presentation(n, &m).unwrap();
        let b = cohomology(&YoungSubgroup::full(n), &m, 1, Method::Bar).unwrap();
        prop_assert_eq!(a.dim(), b.dim());
    }

    #[test]
    fn corestriction_after_restriction_is_the_index(
        p in prop::sample::select(vec![2u64, 3, 5]), n in 2usize..5, kind in 0usize..3, t in 0usize..2, cut in 1usize..4,
    ) {
        let f = PrimeField::new(p).unwrap();
        let m = module(&f, kind, n);
        let sub = blocks(n, cut);
        let g = cohomology(&YoungSubgroup::full(n), &m, t, Method::Auto).unwrap();
        let h = cohomology(&sub, &m, t, Method::Auto).unwrap();
        let composite = corestriction(&h, &g).unwrap().mul(&restriction(&g, &h).unwrap());
        let index = (YoungSubgroup::full(n).order() / sub.order()) as i64;
        let expect = Mat::identity(&f, g.dim()).scale(&f.from_i64(index));
        prop_assert!(g.same_map(&composite, &expect));
    }

    #[test]
    fn verdicts_are_read_off_the_dimensions(
        dims in prop::collection::vec(0usize..3, 1..14), onset in 0usize..6, period in 1usize..4,
    ) {
        let claim = PeriodicityClaim { onset, period };
        let r = PeriodicityReport::from_dims("x", 0, 2, claim, dims.clone());
        let w = dims.len() - 1;
        let fails: Vec<usize> = (onset..=w).filter(|&n| n + period <= w && dims[n] != dims[n + period]).collect();
        prop_assert_eq!(r.first_failure, fails.first().copied());
        let expect = if !fails.is_empty() {
            Verdict::Fail
        } else if w >= onset + 2 * period {
            Verdict::Pass
        } else {
            Verdict::Inconclusive
        };
        prop_assert_eq!(r.verdict, expect);
        if let Some(q) = r.minimal_period {
            prop_assert!(q <= period && (onset..=w).all(|n| n + q > w || dims[n] == dims[n + q]));
        }
        prop_assert_eq!(r.to_csv().lines().count(), dims.len() + 1);
    }
}

#[test]
fn gamma_of_trivial_coefficients_in_degree_zero_is_free_of_rank_one() {
    for p in [2u64, 3, 5] {
        let f = PrimeField::new(p).unwrap();
        let g = build_gamma(&trivial_fi(&f), 0, 8).unwrap();
        assert_eq!(g.dims(), vec![1; 9]);
        for n in 0..=8 {
            for m in n..=8 {
                let c = f.binomial(m as u64, n as u64);
                assert_eq!(g.act(n, m).unwrap(), &Mat::from_rows(&f, vec![vec![c]], 1));
            }
        }
    }
}

#[test]
fn invariants_of_induced_modules_follow_the_free_formula() {
    // Γ^0(I(V)) is free on (V)^{S_d} in degree d: dim = dim V^{S_d} for n ≥ d
    let f = PrimeField::new(3).unwrap();
    for v in [Rep::trivial(&f, 2), Rep::sign(&f, 2), Rep::regular(&f, 2)] {
        let fixed = v.fixed_space().cols();
        let g = build_gamma(&induced_fi(&v).unwrap(), 0, 6).unwrap();
        let expect: Vec<usize> = (0..=6).map(|n| if n < 2 { 0 } else { fixed }).collect();
        assert_eq!(g.dims(), expect);
    }
}

#[test]
fn induced_connections_have_bounded_generators() {
    for p in [2u64, 3] {
        let f = PrimeField::new(p).unwrap();
        for (v, t) in [(Rep::trivial(&f, 0), 1), (Rep::trivial(&f, 1), 1), (Rep::sign(&f, 2), 0)] {
            let c = induced_connection(&v, t, 7).unwrap();
            assert!(c.generators_bounded(), "p = {p}, d = {}, t = {t}", v.n());
            assert!(c.kernel_vanishes);
            let top = c.gamma.window();
            let degrees = &c.decomposition.kernel_degrees;
            for n in 0..=top {
                let free = degrees.iter().filter(|&&k| k <= n).count();
                assert_eq!(c.gamma.dims()[n], free, "p = {p}, n = {n}");
            }
        }
    }
}
