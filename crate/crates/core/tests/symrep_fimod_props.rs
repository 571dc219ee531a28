use dpcoh::exactlin::{Integers, Mat, PrimeField, Ring};
use dpcoh::fimod::{induced_fi, specht_fi, tensor_eval, trivial_fi};
use dpcoh::symrep::{induce_young, outer_tensor, specht_module, Partition, Perm, Rep, YoungSubgroup};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn hook_dim(parts: &[usize]) -> usize {
    let n: usize = parts.iter().sum();
    let conj: Vec<usize> = (0..parts.first().copied().unwrap_or(0))
        .map(|c| parts.iter().filter(|&&p| p > c).count())
        .collect();
    let mut hooks = 1usize;
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1;
        }
    }
    (1..=n).product::<usize>() / hooks
}

fn inversions(g: &Perm) -> usize {
    let im = g.images();
    (0..im.len()).flat_map(|i| (i + 1..im.len()).map(move |j| (i, j))).filter(|&(i, j)| im[i] > im[j]).count()
}

fn perm(max: usize) -> impl Strategy<Value = Perm> {
    (1..=max).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Perm::from_images(v).unwrap())
}

/// Partitions of size at most `max`.
fn partition(max: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..4, 1..4).prop_map(move |mut v| {
        while v.iter().sum::<usize>() > max {
            v.pop();
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(&v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn coxeter_relations(n in 3usize..9, i in 0usize..7) {
        let i = i % (n - 1);
        let s = |k| Perm::s(k, n);
        prop_assert!(s(i).compose(&s(i)).is_identity());
        if i + 2 < n {
            let j = i + 1;
            prop_assert_eq!(s(i).compose(&s(j)).compose(&s(i)), s(j).compose(&s(i)).compose(&s(j)));
        }
        for k in i + 2..n - 1 {
            prop_assert_eq!(s(i).compose(&s(k)), s(k).compose(&s(i)));
        }
    }

    #[test]
    fn reduced_words_rebuild_the_permutation(g in perm(7)) {
        let n = g.n();
        let w = g.reduced_word();
        prop_assert_eq!(w.len(), inversions(&g));
        prop_assert_eq!(g.length(), w.len());
        prop_assert_eq!(Perm::from_word(&w, n), g.clone());
        prop_assert_eq!(g.sign(), if w.len() % 2 == 0 { 1 } else { -1 });
        prop_assert!(g.compose(&g.inverse()).is_identity());
    }

    #[test]
    fn representations_respect_composition(g in perm(5), h in perm(5)) {
        let n = g.n().max(h.n());
        let (g, h) = (g.resize(n), h.resize(n));
        let f = PrimeField::new(3).unwrap();
        for rep in [Rep::regular(&f, n), Rep::points(&f, n), Rep::sign(&f, n)] {
            prop_assert!(rep.check_relations());
            let gh = rep.matrix(&g.compose(&h)).unwrap();
            prop_assert_eq!(gh, rep.matrix(&g).unwrap().mul(&rep.matrix(&h).unwrap()));
        }
    }

    #[test]
    fn specht_dimensions_follow_the_hook_formula(mu in partition(6)) {
        let f = PrimeField::new(2).unwrap();
        let s = specht_module(&f, &mu);
        prop_assert_eq!(s.rep.dim(), hook_dim(mu.parts()));
        prop_assert!(s.rep.check_relations());
        prop_assert_eq!(mu.conjugate().conjugate(), mu.clone());
        prop_assert_eq!(hook_dim(mu.conjugate().parts()), s.rep.dim());
    }

    #[test]
    fn specht_stability_under_padding(mu in partition(3), extra in 0usize..2) {
        let f = PrimeField::new(3).unwrap();
        let m = specht_fi(&f, &mu);
        let n = mu.size() + mu.first() + extra;
        let padded = mu.padded(n).unwrap();
        prop_assert_eq!(m.dim(n).unwrap(), hook_dim(padded.parts()));
        prop_assert!(m.check_equivariance(n).unwrap());
    }

    #[test]
    fn induction_from_young_subgroups(a in 0usize..4, b in 0usize..3, p in prop::sample::select(vec![2u64, 3])) {
        let f = PrimeField::new(p).unwrap();
        let v = outer_tensor(&Rep::regular(&f, a), &Rep::sign(&f, b)).unwrap();
        let ind = induce_young(&v, a).unwrap();
        let n = a + b;
        prop_assert_eq!(ind.dim(), binom(n, a) * v.dim());
        prop_assert!(ind.check_relations());
        // Frobenius: invariants of the induced module are invariants of V
        prop_assert_eq!(ind.fixed_space().cols(), v.fixed_space().cols());
        prop_assert_eq!(v.group(), YoungSubgroup::new(&[a, b]));
    }

    #[test]
    fn induced_fi_modules(d in 0usize..3, n in 0usize..6) {
        let f = PrimeField::new(2).unwrap();
        for v in [Rep::trivial(&f, d), Rep::regular(&f, d)] {
            let m = induced_fi(&v).unwrap();
            prop_assert_eq!(m.dim(n).unwrap(), binom(n, d) * v.dim());
            prop_assert!(m.check_equivariance(n).unwrap());
            prop_assert!(m.check_fixed_points(n, 2).unwrap());
            // transitions compose
            let direct = m.transition_composite(n, n + 2).unwrap();
            let steps = m.transition(n + 1).unwrap().mul(&m.transition(n).unwrap());
            prop_assert_eq!(direct, steps);
        }
    }
}

#[test]
fn invariants_of_a_tensor_square_of_the_trivial_module() {
    let z = Integers;
    let a = trivial_fi(&z);
    for n in 0..6 {
        let parts = tensor_eval(&a, &a, n).unwrap();
        assert_eq!(parts.iter().map(|r| r.dim()).sum::<usize>(), 1 << n);
        let fixed: usize = parts.iter().map(|r| r.fixed_space().cols()).sum();
        assert_eq!(fixed, n + 1);
    }
}

#[test]
fn point_action_is_the_permutation_action() {
    let f = PrimeField::new(5).unwrap();
    let pts = Rep::points(&f, 4);
    for g in Perm::all(4) {
        let m = pts.matrix(&g).unwrap();
        let mut oracle = Mat::zeros(&f, 4, 4);
        for i in 0..4 {
            oracle.set(g.apply(i), i, f.one());
        }
        assert_eq!(m, oracle);
    }
}
