//! Exact rational arithmetic helpers.
//!
//! All instance data and every cut coefficient is a [`Rational`]. The type is
//! `num_rational::BigRational`, which keeps values reduced with a positive
//! denominator; this module adds the rounding primitives the cut generators
//! need, a `p/q` text codec and a continued-fraction rationalizer for
//! floating point LP output.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// `n/d` as a rational. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn floor(q: &Rational) -> Rational {
    q.floor()
}

pub fn ceil(q: &Rational) -> Rational {
    q.ceil()
}

/// Fractional part `q - floor(q)`, always in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn is_integral(q: &Rational) -> bool {
    q.is_integer()
}

/// `q - floor(q / m) * m` for `m > 0`; lies in `[0, m)`.
pub fn modulo(q: &Rational, m: &Rational) -> Rational {
    debug_assert!(m.is_positive());
    q - (q / m).floor() * m
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| malformed())?;
        let d: BigInt = den.trim().parse().map_err(|_| malformed())?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, fraction)) = s.split_once('.') {
        if fraction.is_empty() || !fraction.chars().all(|c| c.is_ascii_digit()) {
            return Err(malformed());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let w: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| malformed())?
        };
        let f: BigInt = fraction.parse().map_err(|_| malformed())?;
        let scale = num_traits::pow(BigInt::from(10), fraction.len());
        let magnitude = Rational::new(w * &scale + f, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = s.parse().map_err(|_| malformed())?;
    Ok(Rational::from_integer(n))
}

/// Formats as `p/q`, or `p` when the value is an integer.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Best rational approximation of `x` with denominator at most `max_denominator`,
/// found by walking the continued-fraction convergents and the final
/// semiconvergent.
pub fn rationalize(x: f64, max_denominator: u64) -> Rational {
    assert!(x.is_finite(), "cannot rationalize {x}");
    assert!(max_denominator >= 1);
    let negative = x < 0.0;
    let mut rest = x.abs();
    // (p_{k-2}, q_{k-2}), (p_{k-1}, q_{k-1})
    let (mut p0, mut q0, mut p1, mut q1): (u128, u128, u128, u128) = (0, 1, 1, 0);
    let cap = max_denominator as u128;
    for _ in 0..64 {
        let a = rest.floor();
        if a > 1e18 {
            break;
        }
        let a_int = a as u128;
        let q2 = a_int * q1 + q0;
        if q2 > cap {
            // largest semiconvergent that still respects the cap
            let t = (cap - q0) / q1.max(1);
            if q1 > 0 && 2 * t >= a_int {
                let ps = t * p1 + p0;
                let qs = t * q1 + q0;
                let semi = ps as f64 / qs as f64;
                let conv = p1 as f64 / q1 as f64;
                if (semi - x.abs()).abs() < (conv - x.abs()).abs() {
                    p1 = ps;
                    q1 = qs;
                }
            }
            break;
        }
        let p2 = a_int * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let f = rest - a;
        if f < 1e-15 {
            break;
        }
        rest = 1.0 / f;
    }
    if q1 == 0 {
        return Rational::zero();
    }
    let r = Rational::new(BigInt::from(p1), BigInt::from(q1));
    if negative {
        -r
    } else {
        r
    }
}

/// A rational that serializes as a `"p/q"` string and accepts either a string
/// or a JSON number on input.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RationalText(pub Rational);

impl fmt::Debug for RationalText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for RationalText {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
            Float(f64),
        }
        let q = match Raw::deserialize(deserializer)? {
            Raw::Text(s) => parse_rational(&s).map_err(serde::de::Error::custom)?,
            Raw::Int(n) => int(n),
            Raw::Float(x) => parse_rational(&format!("{x}")).map_err(serde::de::Error::custom)?,
        };
        Ok(RationalText(q))
    }
}

impl From<Rational> for RationalText {
    fn from(q: Rational) -> Self {
        RationalText(q)
    }
}
