//! Numeric backends.
//!
//! Everything that manipulates coefficients is generic over [`Scalar`], which
//! is implemented for `f64` (the default) and for exact big rationals. The
//! rational backend compares with exact zero; the float backend uses relative
//! tolerances.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used by the oracle backend.
pub type Rational = BigRational;

/// A real field the algorithms can run over.
pub trait Scalar: Clone + Debug + PartialOrd + Signed + Send + Sync + 'static {
    /// `true` for backends with exact arithmetic.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self;

    /// Exact conversion of a finite double.
    fn from_f64(x: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Whether `self` counts as zero next to a quantity of magnitude `scale`.
    /// Exact backends ignore `rel` and test for zero.
    fn negligible(&self, scale: &Self, rel: f64) -> bool;

    /// Text form that round-trips through [`parse_rational`] when exact.
    fn render(&self) -> String;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn negligible(&self, scale: &Self, rel: f64) -> bool {
        self.abs() <= rel * scale.abs()
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite double")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // numerator or denominator too large for a direct conversion
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    fn negligible(&self, _scale: &Self, _rel: f64) -> bool {
        self.is_zero()
    }

    fn render(&self) -> String {
        format_rational(self)
    }
}

/// Parses `"p/q"`, an integer, or a decimal literal such as `"-0.125"` or
/// `"1e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(num / den);
    }
    let bad = || Error::Parse(format!("not a number: {s:?}"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all_digits.is_empty() { "0" } else { &all_digits }).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Formats a rational as `p/q` (or `p` for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer power by repeated multiplication.
pub(crate) fn powi<T: Scalar>(x: &T, e: usize) -> T {
    let mut out = T::one();
    for _ in 0..e {
        out = out * x.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("0.125").unwrap(), Rational::ratio(1, 8));
        assert_eq!(parse_rational("-3/16").unwrap(), Rational::ratio(-3, 16));
        assert_eq!(parse_rational("2.5e-1").unwrap(), Rational::ratio(1, 4));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_i64(7));
        assert_eq!(parse_rational(".5").unwrap(), Rational::ratio(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn float_conversion_is_exact() {
        let r = Rational::from_f64(0.1);
        assert_eq!(Scalar::to_f64(&r), 0.1);
        assert_ne!(r, Rational::ratio(1, 10));
    }
}
