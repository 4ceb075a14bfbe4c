//! Exact rational helpers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Floor of a non-negative rational as `u64`.
pub fn floor_u64(x: &BigRational) -> u64 {
    x.floor().to_integer().to_u64().expect("value fits in u64")
}

/// Ceiling of a non-negative rational as `u64`.
pub fn ceil_u64(x: &BigRational) -> u64 {
    x.ceil().to_integer().to_u64().expect("value fits in u64")
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn pow(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Threshold constant `(r-1)^(r-1) / r^r`.
pub fn c_r(r: usize) -> BigRational {
    let r = r as u32;
    ratio(BigInt::from(r - 1).pow(r - 1), BigInt::from(r).pow(r))
}

/// Parses `"3/10"`, `"0.3"`, `"1e-3"`-free decimals and integers exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parameter(format!("cannot parse {s:?} as a rational number"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let value = BigRational::new(num, den);
    Ok(if neg { -value } else { value })
}

/// Exact rational that serializes as `"p/q"` (or `"p"` for integers).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalString(pub BigRational);

impl From<BigRational> for RationalString {
    fn from(x: BigRational) -> Self {
        RationalString(x)
    }
}

impl RationalString {
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.0)
    }
}

impl fmt::Display for RationalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for RationalString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.3").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational("3/10").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational("2").unwrap(), int(2));
        assert_eq!(parse_rational(".05").unwrap(), ratio(1, 20));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn threshold_constant() {
        assert_eq!(c_r(2), ratio(1, 4));
        assert_eq!(c_r(3), ratio(4, 27));
        assert_eq!(c_r(4), ratio(27, 256));
    }

    #[test]
    fn floors_and_ceilings() {
        assert_eq!(floor_u64(&ratio(40, 3)), 13);
        assert_eq!(ceil_u64(&ratio(40, 3)), 14);
        assert_eq!(ceil_u64(&int(5)), 5);
    }
}
