//! Elements of the divided power algebra `D = ⊕ k·x^[n]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlin::Ring;

/// A finite combination `Σ c_n x^[n]` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPElement<R: Ring> {
    ring: R,
    coeffs: BTreeMap<usize, R::Elem>,
}

impl<R: Ring> DPElement<R> {
    pub fn zero(ring: &R) -> Self {
        DPElement {
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// `c·x^[n]`
    pub fn monomial(ring: &R, n: usize, c: R::Elem) -> Self {
        let mut e = Self::zero(ring);
        if !ring.is_zero(&c) {
            e.coeffs.insert(n, c);
        }
        e
    }

    /// `x^[n]`
    pub fn x(ring: &R, n: usize) -> Self {
        Self::monomial(ring, n, ring.one())
    }

    pub fn one(ring: &R) -> Self {
        Self::x(ring, 0)
    }

    pub fn from_terms(ring: &R, terms: impl IntoIterator<Item = (usize, R::Elem)>) -> Self {
        let mut e = Self::zero(ring);
        for (n, c) in terms {
            e.add_term(n, &c);
        }
        e
    }

    fn add_term(&mut self, n: usize, c: &R::Elem) {
        let r = &self.ring;
        let v = match self.coeffs.get(&n) {
            Some(old) => r.add(old, c),
            None => c.clone(),
        };
        if r.is_zero(&v) {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, v);
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: usize) -> R::Elem {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().cloned()
    }

    /// The degree, when the element is a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        if self.coeffs.len() == 1 {
            self.coeffs.keys().next().cloned()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &other.coeffs {
            out.add_term(*n, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.ring.from_i64(-1)))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_terms(
            &self.ring,
            self.coeffs.iter().map(|(n, v)| (*n, self.ring.mul(c, v))),
        )
    }

    /// Bilinear extension of `x^[n] x^[m] = binom(n+m, n) x^[n+m]`.
    pub fn mul(&self, other: &Self) -> Self {
        let r = &self.ring;
        let mut out = Self::zero(r);
        for (n, a) in &self.coeffs {
            for (m, b) in &other.coeffs {
                let binom = r.binomial((n + m) as u64, *n as u64);
                if r.is_zero(&binom) {
                    continue;
                }
                out.add_term(n + m, &r.mul(&binom, &r.mul(a, b)));
            }
        }
        out
    }

    /// `self^e`
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `d_q(x^[k]) = x^[k-q]`. Any `q ≥ 1` is accepted by the raw shift;
    /// use [`DPElement::derive`] for the checked operation.
    pub fn shift_down(&self, q: usize) -> Self {
        Self::from_terms(
            &self.ring,
            self.coeffs
                .iter()
                .filter(|(n, _)| **n >= q)
                .map(|(n, c)| (n - q, c.clone())),
        )
    }

    /// The derivation `d` (q = 1) or `d_q` for `q` a power of the
    /// characteristic.
    pub fn derive(&self, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::invalid("q must be positive"));
        }
        if q > 1 {
            let p = self.ring.characteristic() as usize;
            if p == 0 {
                return Err(Error::FieldOnly(
                    "d_q with q > 1 is a derivation only in characteristic p".into(),
                ));
            }
            let mut t = q;
            while t % p == 0 {
                t /= p;
            }
            if t != 1 {
                return Err(Error::invalid(format!("q = {q} is not a power of p = {p}")));
            }
        }
        Ok(self.shift_down(q))
    }

    /// `[(i, (d^i f)_0)]` for the nonzero terms; `f = Σ x^[i] (d^i f)_0`.
    pub fn taylor_expand(&self) -> Vec<(usize, R::Elem)> {
        let mut out = Vec::new();
        let mut g = self.clone();
        let mut i = 0;
        while !g.is_zero() {
            let c = g.coeff(0);
            if !self.ring.is_zero(&c) {
                out.push((i, c));
            }
            g = g.shift_down(1);
            i += 1;
        }
        out
    }

    pub fn from_taylor(ring: &R, terms: &[(usize, R::Elem)]) -> Self {
        let mut out = Self::zero(ring);
        for (i, c) in terms {
            out = out.add(&Self::monomial(ring, *i, c.clone()));
        }
        out
    }

    /// Parses `"3*x[2] + x[5] - 2*x[0]"` or `"0"`.
    pub fn parse(ring: &R, s: &str) -> Result<Self> {
        let err = |m: String| Error::Parse { line: 1, msg: m };
        let t = s.trim();
        if t == "0" || t.is_empty() {
            return Ok(Self::zero(ring));
        }
        let mut out = Self::zero(ring);
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in t.chars() {
            if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
                terms.push((neg, cur.trim().to_string()));
                cur.clear();
                neg = ch == '-';
            } else if ch == '-' && cur.trim().is_empty() {
                neg = !neg;
            } else if ch == '+' && cur.trim().is_empty() {
            } else {
                cur.push(ch);
            }
        }
        if cur.trim().is_empty() {
            return Err(err(format!("dangling sign in '{s}'")));
        }
        terms.push((neg, cur.trim().to_string()));
        for (neg, term) in terms {
            let (coef, mono) = match term.rsplit_once('*') {
                Some((c, m)) => (c.trim().to_string(), m.trim().to_string()),
                None => ("1".to_string(), term.clone()),
            };
            let deg = mono
                .strip_prefix("x[")
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| err(format!("expected x[k], got '{mono}'")))?
                .trim()
                .parse::<usize>()
                .map_err(|e| err(format!("bad degree in '{mono}': {e}")))?;
            let c: BigInt = coef
                .parse()
                .map_err(|e| err(format!("bad coefficient '{coef}': {e}")))?;
            let c = if neg { -c } else { c };
            out.add_term(deg, &ring.from_bigint(&c));
        }
        Ok(out)
    }
}

impl<R: Ring> fmt::Display for DPElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(n, c)| {
                let c = self.ring.to_bigint(c);
                if c == BigInt::from(1) {
                    format!("x[{n}]")
                } else {
                    format!("{c}*x[{n}]")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `y_i = x^[p^i]`.
pub fn y<R: Ring>(ring: &R, i: u32) -> DPElement<R> {
    let p = ring.characteristic() as usize;
    DPElement::x(ring, p.pow(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Integers, PrimeField};

    #[test]
    fn product_rule_examples() {
        let z = Integers;
        let a = DPElement::x(&z, 2).mul(&DPElement::x(&z, 3));
        assert_eq!(a, DPElement::monomial(&z, 5, BigInt::from(10)));
        assert_eq!(a.to_string(), "10*x[5]");
        let f2 = PrimeField::new(2).unwrap();
        assert!(DPElement::x(&f2, 1).mul(&DPElement::x(&f2, 1)).is_zero());
        let f = DPElement::parse(&z, "3*x[1] + x[4]").unwrap();
        assert_eq!(DPElement::one(&z).mul(&f), f);
    }

    #[test]
    fn derivations() {
        let z = Integers;
        assert_eq!(DPElement::x(&z, 5).derive(1).unwrap(), DPElement::x(&z, 4));
        assert!(DPElement::x(&z, 0).derive(1).unwrap().is_zero());
        assert!(DPElement::x(&z, 3).derive(2).is_err());
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(DPElement::x(&f2, 3).derive(2).unwrap(), DPElement::x(&f2, 1));
        let f3 = PrimeField::new(3).unwrap();
        assert!(DPElement::x(&f3, 3).derive(2).is_err());
    }

    #[test]
    fn taylor_examples() {
        let z = Integers;
        assert_eq!(
            DPElement::x(&z, 3).taylor_expand(),
            vec![(3, BigInt::from(1))]
        );
        let f = DPElement::parse(&z, "2*x[0] + 3*x[2]").unwrap();
        assert_eq!(
            f.taylor_expand(),
            vec![(0, BigInt::from(2)), (2, BigInt::from(3))]
        );
    }

    #[test]
    fn parse_display_roundtrip() {
        let z = Integers;
        for s in ["0", "x[0]", "10*x[5]", "-2*x[1] + x[3]"] {
            let e = DPElement::parse(&z, s).unwrap();
            assert_eq!(DPElement::parse(&z, &e.to_string()).unwrap(), e);
        }
        assert_eq!(DPElement::parse(&z, "x[1] - x[1]").unwrap().to_string(), "0");
        assert!(DPElement::parse(&z, "x[a]").is_err());
        assert!(DPElement::parse(&z, "3*y[1]").is_err());
    }
}
