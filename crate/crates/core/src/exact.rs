//! Exact scalar helpers shared by every module.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn from_bigint(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

pub fn from_biguint(v: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// Integer power of a rational; negative exponents invert.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

pub fn to_f64(v: &Rational) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    // Integer quotient carrying ~64 significant bits, then rescale.
    let shift = 64 - (v.numer().bits() as i64 - v.denom().bits() as i64);
    let q = if shift >= 0 {
        (v.numer() << (shift as usize)) / v.denom()
    } else {
        v.numer() / (v.denom() << ((-shift) as usize))
    };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powf(-shift as f64)
}

pub fn abs(v: &Rational) -> Rational {
    v.abs()
}

/// Wire form of an exact rational: decimal strings survive 64-bit overflow downstream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for ExactValue {
    fn from(v: &Rational) -> Self {
        ExactValue {
            num: v.numer().to_string(),
            den: v.denom().to_string(),
        }
    }
}

impl ExactValue {
    pub fn to_rational(&self) -> Option<Rational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn to_f64_handles_huge_operands() {
        let big = Rational::new(BigInt::from(10).pow(400) + 1, BigInt::from(10).pow(400) * 3);
        assert!((to_f64(&big) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(to_f64(&rat(-7, 2)), -3.5);
    }

    #[test]
    fn exact_value_round_trip() {
        let v = rat(-12, 18);
        let w = ExactValue::from(&v);
        assert_eq!(w.num, "-2");
        assert_eq!(w.den, "3");
        assert_eq!(w.to_rational().unwrap(), v);
    }
}
