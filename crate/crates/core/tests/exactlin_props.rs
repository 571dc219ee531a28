use dpcoh::exactlin::{quotient_structure, Integers, Mat, PrimeField, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Plain Gaussian elimination on row vectors mod `p`.
fn dense_rank(p: u64, rows: &[Vec<u64>]) -> usize {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p * p - f * a[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combos(n - 1, k);
    for mut c in combos(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all `k × k` minors.
fn minor_gcd(m: &[Vec<BigInt>], k: usize) -> BigInt {
    let (r, c) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    for rs in combos(r, k) {
        for cs in combos(c, k) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn field_matrix() -> impl Strategy<Value = (u64, usize, Vec<Vec<u64>>)> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..12, 1usize..40).prop_flat_map(|(p, r, c)| {
        (Just(p), Just(c), prop::collection::vec(prop::collection::vec(0..p, c), r))
    })
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_and_kernel_over_fields((p, cols, rows) in field_matrix()) {
        let f = PrimeField::new(p).unwrap();
        let m = Mat::from_rows(&f, rows.clone(), cols);
        let rank = m.rank();
        prop_assert_eq!(rank, dense_rank(p, &rows));
        prop_assert_eq!(m.rref().unwrap().rank(), rank);
        let k = m.kernel();
        prop_assert_eq!(k.cols(), cols - rank);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn smith_diagonal_is_the_minor_gcd_chain(rows in int_matrix()) {
        let z = Integers;
        let cols = rows[0].len();
        let m = Mat::from_i64(&z, &rows);
        let s = m.smith();
        prop_assert_eq!(s.p.mul(&m).mul(&s.q), s.d.clone());
        prop_assert_eq!(s.p.mul(&s.pinv), Mat::identity(&z, rows.len()));
        let diag = s.diagonal();
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut prod = BigInt::from(1);
        for k in 1..=rows.len().min(cols) {
            let d = diag[k - 1].abs();
            if k > 1 && !d.is_zero() {
                prop_assert!((&d % diag[k - 2].abs()).is_zero(), "divisibility at {}", k);
            }
            prod *= &d;
            prop_assert_eq!(minor_gcd(&big, k), prod.clone(), "k = {}", k);
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn quotient_ignores_column_order_and_zero_columns(rows in int_matrix(), seed in any::<u64>(), extra in 0usize..3) {
        let z = Integers;
        let m = Mat::from_i64(&z, &rows);
        let base = quotient_structure(m.rows(), &m);
        let mut order: Vec<usize> = (0..m.cols()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = m.select_columns(&order).hstack(&Mat::zeros(&z, m.rows(), extra));
        prop_assert_eq!(quotient_structure(m.rows(), &permuted), base.clone());
        let order_of_torsion: BigInt = base.invariant_factors.iter().product();
        if base.free_rank == 0 {
            let square = m.rows() == m.cols();
            if square {
                let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
                prop_assert_eq!(det(&big).abs(), order_of_torsion);
            }
        }
    }

    #[test]
    fn solve_and_inverse_round_trip((p, cols, rows) in field_matrix(), coeffs in prop::collection::vec(0u64..7, 40)) {
        let f = PrimeField::new(p).unwrap();
        let m = Mat::from_rows(&f, rows, cols);
        let x: Vec<u64> = coeffs[..cols].iter().map(|c| c % p).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
        let sq = m.mul(&m.transpose());
        match sq.inverse() {
            Some(inv) => prop_assert_eq!(sq.mul(&inv), Mat::identity(&f, sq.rows())),
            None => prop_assert!(sq.rank() < sq.rows()),
        }
    }
}

#[test]
fn ring_arithmetic_agrees_with_integers() {
    let f = PrimeField::new(7).unwrap();
    for a in -20i64..20 {
        for b in -20i64..20 {
            let (x, y) = (f.from_i64(a), f.from_i64(b));
            assert_eq!(f.mul(&x, &y), f.from_i64(a * b));
            assert_eq!(f.sub(&x, &y), f.from_i64(a - b));
        }
    }
    assert_eq!(f.binomial(10, 3), f.from_i64(120));
    assert_eq!(Integers.binomial(10, 3), BigInt::from(120));
}
