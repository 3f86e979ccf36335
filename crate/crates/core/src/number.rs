//! Exact rationals and the extended real line.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` with `q > 0` and `gcd(p, q) = 1`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if !den.is_positive() {
        return Err(Error::Parse(format!("rational {s:?} needs a positive denominator")));
    }
    if !num.gcd(&den).is_one() && !(num.is_zero() && den.is_one()) {
        return Err(Error::Parse(format!("rational {s:?} is not in lowest terms")));
    }
    Ok(Rational::new_raw(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A point of ℝ ∪ {−∞, +∞}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtReal {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn parse(s: &str) -> Result<ExtReal> {
        match s.trim() {
            "-inf" => Ok(ExtReal::NegInf),
            "+inf" => Ok(ExtReal::PosInf),
            other => parse_rational(other).map(ExtReal::Finite),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            ExtReal::NegInf => 0,
            ExtReal::Finite(_) => 1,
            ExtReal::PosInf => 2,
        }
    }
}

impl From<Rational> for ExtReal {
    fn from(r: Rational) -> Self {
        ExtReal::Finite(r)
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<Rational> for ExtReal {
    fn eq(&self, other: &Rational) -> bool {
        self.finite() == Some(other)
    }
}

impl PartialOrd<Rational> for ExtReal {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(match self {
            ExtReal::NegInf => Ordering::Less,
            ExtReal::Finite(a) => a.cmp(other),
            ExtReal::PosInf => Ordering::Greater,
        })
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::Finite(r) => f.write_str(&format_rational(r)),
            ExtReal::PosInf => f.write_str("+inf"),
        }
    }
}
