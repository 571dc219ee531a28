//! Run-time selected coefficient ring, used at the text and binding
//! boundaries where the ring is only known from user input.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::ring::{is_prime, PrimeField};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingMode {
    Prime(u64),
    Integers,
}

impl RingMode {
    /// `p = 0` selects the integers.
    pub fn from_characteristic(p: u64) -> Result<Self> {
        if p == 0 {
            Ok(RingMode::Integers)
        } else if is_prime(p) && p < (1 << 31) {
            Ok(RingMode::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingMode::Prime(p) => *p,
            RingMode::Integers => 0,
        }
    }

    pub fn field(&self) -> Result<PrimeField> {
        match self {
            RingMode::Prime(p) => PrimeField::new(*p),
            RingMode::Integers => Err(Error::FieldOnly(
                "epsilon and lambda are only defined over a field of characteristic p".into(),
            )),
        }
    }
}

impl fmt::Display for RingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingMode::Prime(p) => write!(f, "F_{p}"),
            RingMode::Integers => write!(f, "Z"),
        }
    }
}

impl FromStr for RingMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("z") || t == "0" {
            return Ok(RingMode::Integers);
        }
        let t = t.strip_prefix("F_").or_else(|| t.strip_prefix("F")).unwrap_or(t);
        let p: u64 = t
            .parse()
            .map_err(|_| Error::invalid(format!("unknown ring '{s}'")))?;
        RingMode::from_characteristic(p)
    }
}

/// An element of `F_p` or `Z`, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scalar {
    mode: RingMode,
    value: BigInt,
}

impl Scalar {
    pub fn new(mode: RingMode, value: impl Into<BigInt>) -> Self {
        let value = value.into();
        let value = match mode {
            RingMode::Prime(p) => value.mod_floor(&BigInt::from(p)),
            RingMode::Integers => value,
        };
        Scalar { mode, value }
    }

    pub fn mode(&self) -> RingMode {
        self.mode
    }
    pub fn value(&self) -> &BigInt {
        &self.value
    }
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::ModeMismatch(format!("{} vs {}", self.mode, other.mode)))
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(Scalar::new(self.mode, &self.value + &other.value))
    }
    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(Scalar::new(self.mode, &self.value - &other.value))
    }
    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(Scalar::new(self.mode, &self.value * &other.value))
    }
    pub fn neg(&self) -> Scalar {
        Scalar::new(self.mode, -&self.value)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representatives() {
        let m = RingMode::Prime(5);
        assert_eq!(Scalar::new(m, -1).value(), &BigInt::from(4));
        let a = Scalar::new(m, 3);
        assert_eq!(a.add(&Scalar::new(m, 4)).unwrap().value(), &BigInt::from(2));
        let z = Scalar::new(RingMode::Integers, 3);
        assert!(a.add(&z).is_err());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("Z".parse::<RingMode>().unwrap(), RingMode::Integers);
        assert_eq!("3".parse::<RingMode>().unwrap(), RingMode::Prime(3));
        assert_eq!("F_7".parse::<RingMode>().unwrap(), RingMode::Prime(7));
        assert!("4".parse::<RingMode>().is_err());
        assert!(RingMode::Integers.field().is_err());
    }
}
