//! The two coefficient rings: prime fields `F_p` and the integers.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic on a commutative coefficient ring.
///
/// Values of the ring descriptor are cheap to clone; elements are always kept
/// in canonical form so that `==` is equality in the ring.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// Canonical integer representative (`0 <= v < p` for fields).
    fn to_bigint(&self, a: &Self::Elem) -> BigInt;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse, if `a` is a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// 0 for the integers.
    fn characteristic(&self) -> u64;
    fn is_field(&self) -> bool {
        self.characteristic() != 0
    }
    fn binomial(&self, n: u64, k: u64) -> Self::Elem;
    fn name(&self) -> String;

    /// Euclidean division: `a = q*b + r` with `r` strictly smaller than `b`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// Whether `a` is strictly smaller than `b` in the Euclidean size.
    fn smaller(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// A unit `u` such that `u*a` is the canonical associate of `a`.
    fn normalizer(&self, a: &Self::Elem) -> Self::Elem;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }
    /// `a += c * b`
    fn add_mul_assign(&self, a: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        *a = self.add(a, &self.mul(c, b));
    }
}

/// The prime field `F_p`, `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    /// `binom(n, k) mod p` for `n < p`.
    fn small_binomial(&self, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let k = k.min(n - k);
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num = num * ((n - i) % self.p) % self.p;
            den = den * ((i + 1) % self.p) % self.p;
        }
        num * self.pow(den, self.p - 2) % self.p
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn to_bigint(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    /// Lucas' theorem, digit by digit in base `p`.
    fn binomial(&self, mut n: u64, mut k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut r = 1u64;
        while k > 0 || n > 0 {
            let (nd, kd) = (n % self.p, k % self.p);
            if kd > nd {
                return 0;
            }
            r = r * self.small_binomial(nd, kd) % self.p;
            n /= self.p;
            k /= self.p;
        }
        r
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        (self.mul(a, &self.inv(b).expect("division by zero")), 0)
    }
    fn smaller(&self, a: &u64, b: &u64) -> bool {
        *a == 0 && *b != 0
    }
    fn normalizer(&self, a: &u64) -> u64 {
        self.inv(a).unwrap_or(1)
    }
    #[inline]
    fn add_mul_assign(&self, a: &mut u64, c: &u64, b: &u64) {
        *a = (*a + c * b) % self.p;
    }
}

/// The ring of integers, with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_bigint(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn to_bigint(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn binomial(&self, n: u64, k: u64) -> BigInt {
        big_binomial(n, k)
    }
    fn name(&self) -> String {
        "Z".to_string()
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        (a / b, a % b)
    }
    fn smaller(&self, a: &BigInt, b: &BigInt) -> bool {
        a.magnitude() < b.magnitude()
    }
    fn normalizer(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
    fn add_mul_assign(&self, a: &mut BigInt, c: &BigInt, b: &BigInt) {
        *a += c * b;
    }
}

pub fn big_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest `r >= 0` with `n <= p^r`.
pub fn ell(p: u64, n: i64) -> u32 {
    let mut r = 0;
    let mut q: i64 = 1;
    while n > q {
        q *= p as i64;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas_matches_exact_binomials() {
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            for n in 0..40 {
                for k in 0..=n {
                    let exact = big_binomial(n, k);
                    assert_eq!(f.binomial(n, k), f.from_bigint(&exact), "p={p} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2_147_483_659).is_err());
    }

    #[test]
    fn ell_values() {
        assert_eq!(ell(2, 0), 0);
        assert_eq!(ell(2, 1), 0);
        assert_eq!(ell(2, 2), 1);
        assert_eq!(ell(2, 3), 2);
        assert_eq!(ell(3, 9), 2);
        assert_eq!(ell(3, 10), 3);
        assert_eq!(ell(3, -4), 0);
    }
}
