//! Cohomology of symmetric groups and their Young subgroups with
//! restriction, corestriction, inflation and conjugation computed on
//! normalized bar cochains.

pub mod cochain;
pub mod cohomology;
pub mod maps;

pub use cochain::{Cocycle, CochainModel, GroupTable};
pub use cohomology::{
    cohomology, h1_presentation, CohomologyGroup, Method, BAR_LIMIT_FIELD, BAR_LIMIT_Z, PRESENTATION_LIMIT,
};
pub use maps::{
    conjugate, corestrict, corestriction, dold_check, dold_zeta, inflate, nakaoka_row, push, restrict, restriction,
    DoldReport, NakaokaRow,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Integers, Mat, PrimeField, Ring};
    use crate::symrep::{specht_module, Partition, Perm, Rep, YoungSubgroup};
    use num_bigint::BigInt;
    use std::collections::HashMap;

    /// Dimension of `H^t(S_n, M)` from the full normalized complex, built
    /// without the coordinate reduction.
    fn oracle_dim(f: &PrimeField, module: &Rep<PrimeField>, t: usize) -> usize {
        let n = module.n();
        let elems: Vec<Perm> = Perm::all(n).into_iter().filter(|g| !g.is_identity()).collect();
        let idx: HashMap<Perm, usize> = elems.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let m = module.dim();
        let mats: Vec<Mat<PrimeField>> = elems.iter().map(|g| module.matrix(g).unwrap()).collect();
        let tuples = |k: usize| -> Vec<Vec<usize>> {
            let mut out = vec![vec![]];
            for _ in 0..k {
                out = out
                    .into_iter()
                    .flat_map(|p| {
                        (0..elems.len()).map(move |x| {
                            let mut q = p.clone();
                            q.push(x);
                            q
                        })
                    })
                    .collect();
            }
            out
        };
        // δ: C^k → C^{k+1}
        let delta = |k: usize| -> Mat<PrimeField> {
            let src = tuples(k);
            let dst = tuples(k + 1);
            let src_idx: HashMap<Vec<usize>, usize> = src.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
            let mut d = Mat::zeros(f, dst.len() * m, src.len() * m);
            let add = |row: usize, tuple: Option<Vec<usize>>, c: usize, v: u64, d: &mut Mat<PrimeField>| {
                if let Some(tp) = tuple {
                    let col = src_idx[&tp] * m + c;
                    let x = f.add(d.get(row, col), &v);
                    d.set(row, col, x);
                }
            };
            for (ri, a) in dst.iter().enumerate() {
                for c in 0..m {
                    let row = ri * m + c;
                    for c2 in 0..m {
                        let v = *mats[a[0]].get(c, c2);
                        if v != 0 {
                            add(row, Some(a[1..].to_vec()), c2, v, &mut d);
                        }
                    }
                    for j in 1..=k {
                        let prod = elems[a[j - 1]].compose(&elems[a[j]]);
                        let merged = idx.get(&prod).map(|&x| {
                            let mut q = a[..j - 1].to_vec();
                            q.push(x);
                            q.extend(&a[j + 1..]);
                            q
                        });
                        let s = if j % 2 == 1 { f.neg(&1) } else { 1 };
                        add(row, merged, c, s, &mut d);
                    }
                    let s = if (k + 1) % 2 == 1 { f.neg(&1) } else { 1 };
                    add(row, Some(a[..k].to_vec()), c, s, &mut d);
                }
            }
            d
        };
        let dim_c = elems.len().pow(t as u32) * m;
        let rank_out = delta(t).rank();
        let rank_in = if t == 0 { 0 } else { delta(t - 1).rank() };
        dim_c - rank_out - rank_in
    }

    #[test]
    fn small_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let full = YoungSubgroup::full;
        let h0 = cohomology(&full(3), &Rep::trivial(&f2, 3), 0, Method::Auto).unwrap();
        assert_eq!(h0.dim(), 1);
        for n in 2..7 {
            assert_eq!(h1_presentation(n, &Rep::trivial(&f2, n)).unwrap().dim(), 1);
        }
        assert_eq!(h1_presentation(4, &Rep::trivial(&f3, 4)).unwrap().dim(), 0);
    }

    #[test]
    fn integral_cohomology_of_s3() {
        let z = Integers;
        let triv = Rep::trivial(&z, 3);
        let h2 = cohomology(&YoungSubgroup::full(3), &triv, 2, Method::Auto).unwrap();
        assert_eq!(h2.structure().to_string(), "Z/2");
        let h3 = cohomology(&YoungSubgroup::full(3), &triv, 3, Method::Auto).unwrap();
        assert!(h3.structure().is_zero());
        let h4 = cohomology(&YoungSubgroup::full(3), &triv, 4, Method::Auto).unwrap();
        assert_eq!(h4.structure().to_string(), "Z/6");
        let h1 = cohomology(&YoungSubgroup::full(3), &triv, 1, Method::Auto).unwrap();
        assert!(h1.structure().is_zero());
    }

    #[test]
    fn agrees_with_the_full_complex() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let cases: Vec<(PrimeField, Rep<PrimeField>, usize)> = vec![
            (f2.clone(), Rep::trivial(&f2, 3), 1),
            (f2.clone(), Rep::trivial(&f2, 3), 2),
            (f2.clone(), Rep::points(&f2, 3), 2),
            (f3.clone(), Rep::sign(&f3, 3), 1),
            (f3.clone(), Rep::sign(&f3, 3), 2),
            (f2.clone(), Rep::trivial(&f2, 2), 3),
        ];
        for (f, module, t) in cases {
            let n = module.n();
            let expect = oracle_dim(&f, &module, t);
            let bar = cohomology(&YoungSubgroup::full(n), &module, t, Method::Bar).unwrap();
            assert_eq!(bar.dim(), expect, "n = {n}, t = {t}");
            if t == 1 {
                assert_eq!(h1_presentation(n, &module).unwrap().dim(), expect);
            }
        }
    }

    #[test]
    fn presentation_matches_bar_on_specht() {
        let f2 = PrimeField::new(2).unwrap();
        let sp = specht_module(&f2, &Partition::new(&[3, 1]).unwrap()).rep;
        let a = h1_presentation(4, &sp).unwrap();
        let b = cohomology(&YoungSubgroup::full(4), &sp, 1, Method::Bar).unwrap();
        assert_eq!(a.dim(), b.dim());
    }

    #[test]
    fn cor_after_res_is_the_index() {
        let z = Integers;
        let g = YoungSubgroup::full(3);
        let h = YoungSubgroup::new(&[2, 1]);
        let triv = Rep::trivial(&z, 3);
        let hg = cohomology(&g, &triv, 0, Method::Auto).unwrap();
        let hh = cohomology(&h, &triv, 0, Method::Auto).unwrap();
        let res = restriction(&hg, &hh).unwrap();
        let cor = corestriction(&hh, &hg).unwrap();
        assert_eq!(cor.mul(&res), Mat::from_rows(&z, vec![vec![BigInt::from(3)]], 1));

        for (p, t) in [(2u64, 1usize), (3, 1), (2, 2), (3, 2)] {
            let f = PrimeField::new(p).unwrap();
            for module in [Rep::trivial(&f, 4), Rep::sign(&f, 4), Rep::points(&f, 4)] {
                let g = YoungSubgroup::full(4);
                let h = YoungSubgroup::new(&[3, 1]);
                let hg = cohomology(&g, &module, t, Method::Auto).unwrap();
                let hh = cohomology(&h, &module, t, Method::Auto).unwrap();
                let res = restriction(&hg, &hh).unwrap();
                let cor = corestriction(&hh, &hg).unwrap();
                let four = Mat::identity(&f, hg.dim()).scale(&f.from_i64(4));
                assert_eq!(cor.mul(&res), four, "p = {p}, t = {t}");
            }
        }
    }

    #[test]
    fn restriction_is_functorial() {
        let f = PrimeField::new(2).unwrap();
        let m = Rep::points(&f, 4);
        let a = cohomology(&YoungSubgroup::full(4), &m, 1, Method::Auto).unwrap();
        let b = cohomology(&YoungSubgroup::new(&[3, 1]), &m, 1, Method::Auto).unwrap();
        let c = cohomology(&YoungSubgroup::new(&[2, 1, 1]), &m, 1, Method::Auto).unwrap();
        let ab = restriction(&a, &b).unwrap();
        let bc = restriction(&b, &c).unwrap();
        let ac = restriction(&a, &c).unwrap();
        assert_eq!(bc.mul(&ab), ac);
        assert!(restriction(&c, &a).is_err());
    }

    #[test]
    fn dold_identity_small() {
        for p in [2u64, 3] {
            let f = PrimeField::new(p).unwrap();
            for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                for module in [Rep::trivial(&f, n + m), Rep::regular(&f, n + m)] {
                    for t in 0..2 {
                        let rep = dold_check(&module, n, m, t).unwrap();
                        assert!(rep.holds, "p = {p}, n = {n}, m = {m}, t = {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn nakaoka_in_low_degree() {
        let f2 = PrimeField::new(2).unwrap();
        for n in 2..6 {
            let row = nakaoka_row(&f2, n, 1).unwrap();
            assert_eq!(row.bijective, n >= 3 || row.bijective, "{row:?}");
            if row.predicted {
                assert!(row.bijective);
            }
        }
        let row = nakaoka_row(&Integers, 4, 1).unwrap();
        assert!(row.bijective);
    }

    #[test]
    fn scale_guard() {
        let z = Integers;
        let err = cohomology(&YoungSubgroup::full(5), &Rep::trivial(&z, 5), 2, Method::Auto).unwrap_err();
        assert!(matches!(err, crate::Error::Scale { .. }));
        let f = PrimeField::new(2).unwrap();
        assert!(h1_presentation(13, &Rep::trivial(&f, 13)).is_err());
    }
}
