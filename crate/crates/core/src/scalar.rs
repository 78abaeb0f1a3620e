//! Scalar arithmetic shared by tables, forms and integrals.
//!
//! Everything numeric in the crate is generic over [`Scalar`]. Two
//! implementations exist: [`Rational`], an exact fraction over `i128` whose
//! arithmetic panics on overflow instead of wrapping, and `f64`, compared
//! with an absolute tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Numeric type usable as a measure value.
pub trait Scalar:
    Num + Copy + PartialOrd + Neg<Output = Self> + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// True when arithmetic is exact and comparisons ignore tolerances.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Equality up to `tol` (absolute). Exact types ignore `tol`.
    fn close_to(&self, other: &Self, tol: f64) -> bool;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -*self
        } else {
            *self
        }
    }

    /// `self` is zero up to `tol`.
    fn near_zero(&self, tol: f64) -> bool {
        self.close_to(&Self::zero(), tol)
    }

    /// `self < 0` by more than `tol`.
    fn is_negative_beyond(&self, tol: f64) -> bool {
        if Self::EXACT {
            *self < Self::zero()
        } else {
            self.to_f64() < -tol
        }
    }

    /// Parse a decimal (`"0.75"`, `"-1e-3"`) or fraction (`"9/16"`).
    fn parse_number(s: &str) -> Result<Self>;

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn parse_number(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| Error::parse(format!("bad number {s:?}")))?;
            let q: f64 = q.trim().parse().map_err(|_| Error::parse(format!("bad number {s:?}")))?;
            if q == 0.0 {
                return Err(Error::parse(format!("zero denominator in {s:?}")));
            }
            return Ok(p / q);
        }
        s.parse().map_err(|_| Error::parse(format!("bad number {s:?}")))
    }
}

/// Exact fraction with `i128` numerator and denominator, always reduced.
///
/// Overflow is a panic rather than a silently wrong answer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "rational with zero denominator");
        Rational(Ratio::new(numer, denom))
    }

    pub fn integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Exact conversion of a finite binary float.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Rational::zero());
        }
        let bits = x.to_bits();
        let sign: i128 = if bits >> 63 == 0 { 1 } else { -1 };
        let exp = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, e) = if exp == 0 {
            (frac as i128, -1074)
        } else {
            ((frac | (1u64 << 52)) as i128, exp - 1075)
        };
        if e >= 0 {
            if e > 70 {
                return None;
            }
            Some(Rational::integer(sign * (mantissa << e)))
        } else {
            let shift = -e;
            let tz = mantissa.trailing_zeros() as i32;
            let drop = tz.min(shift);
            let m = mantissa >> drop;
            let shift = shift - drop;
            if shift > 120 {
                return None;
            }
            Some(Rational::new(sign * m, 1i128 << shift))
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident, $what:literal) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(
                    self.0
                        .$checked(&rhs.0)
                        .unwrap_or_else(|| panic!(concat!("rational ", $what, " overflow: {} and {}"), self, rhs)),
                )
            }
        }
    };
}

checked_binop!(Add, add, checked_add, "addition");
checked_binop!(Sub, sub, checked_sub, "subtraction");
checked_binop!(Mul, mul, checked_mul, "multiplication");

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(
            self.0
                .checked_div(&rhs.0)
                .unwrap_or_else(|| panic!("rational division overflow: {self} and {rhs}")),
        )
    }
}

impl Rem for Rational {
    type Output = Rational;
    fn rem(self, rhs: Rational) -> Rational {
        Rational(self.0 % rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Ratio::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Ratio::one())
    }
}

impl Num for Rational {
    type FromStrRadixErr = num_rational::ParseRatioError;
    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        Ratio::from_str_radix(s, radix).map(Rational)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n as i128)
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <Rational as Scalar>::parse_number(s)
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: i128 = if all.is_empty() { 0 } else { all.parse().ok()? };
    let scale = exponent - frac_part.len() as i32;
    if scale.unsigned_abs() > 36 {
        return None;
    }
    let pow = 10i128.checked_pow(scale.unsigned_abs())?;
    let value = if scale >= 0 {
        Rational::integer(numer.checked_mul(pow)?)
    } else {
        Rational::new(numer, pow)
    };
    Some(if negative { -value } else { value })
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Rational::integer(n as i128)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(numer as i128, denom as i128)
    }

    fn to_f64(&self) -> f64 {
        // Split off the integer part so huge numerators keep their precision.
        let (q, r) = self.numer().div_rem(&self.denom());
        q as f64 + r as f64 / self.denom() as f64
    }

    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    fn parse_number(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_decimal(p.trim());
            let q = parse_decimal(q.trim());
            return match (p, q) {
                (Some(p), Some(q)) if !q.is_zero() => Ok(p / q),
                (Some(_), Some(_)) => Err(Error::parse(format!("zero denominator in {s:?}"))),
                _ => Err(Error::parse(format!("bad number {s:?}"))),
            };
        }
        parse_decimal(s).ok_or_else(|| Error::parse(format!("bad number {s:?}")))
    }
}

/// Compare two scalars, treating incomparable floats (NaN) as equal.
pub fn cmp_scalar<S: Scalar>(a: &S, b: &S) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Sort and deduplicate scalars (exact equality).
pub fn sorted_distinct<S: Scalar>(mut values: Vec<S>) -> Vec<S> {
    values.sort_by(cmp_scalar);
    values.dedup_by(|a, b| a == b);
    values
}

/// Render with 12 significant digits, the CLI's float format.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(Rational::parse_number("9/16").unwrap(), Rational::new(9, 16));
        assert_eq!(Rational::parse_number("0.75").unwrap(), Rational::new(3, 4));
        assert_eq!(Rational::parse_number("-1.5e-1").unwrap(), Rational::new(-3, 20));
        assert_eq!(Rational::parse_number("2").unwrap(), Rational::integer(2));
        assert_eq!(Rational::parse_number(".5").unwrap(), Rational::new(1, 2));
        assert!(Rational::parse_number("1/0").is_err());
        assert!(Rational::parse_number("abc").is_err());
        assert!(Rational::parse_number("").is_err());
        assert_eq!(f64::parse_number("3/4").unwrap(), 0.75);
    }

    #[test]
    fn display_is_p_over_q() {
        assert_eq!(Rational::new(10, 16).to_string(), "5/8");
        assert_eq!(Rational::new(-4, 2).to_string(), "-2");
    }

    #[test]
    fn exact_float_conversion() {
        assert_eq!(Rational::from_f64_exact(0.75), Some(Rational::new(3, 4)));
        assert_eq!(Rational::from_f64_exact(-3.0), Some(Rational::integer(-3)));
        let tenth = Rational::from_f64_exact(0.1).unwrap();
        assert_ne!(tenth, Rational::new(1, 10));
        assert_eq!(tenth.to_f64(), 0.1);
        assert_eq!(Rational::from_f64_exact(f64::NAN), None);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_panics() {
        let big = Rational::integer(i128::MAX / 2);
        let _ = big * Rational::integer(4);
    }

    #[test]
    fn sig12_format() {
        assert_eq!(format_sig12(0.4375), "0.4375");
        assert_eq!(format_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig12(2.0 * (std::f64::consts::E - 2.0)), "1.43656365692");
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-2.5), "-2.5");
    }

    #[test]
    fn tolerance_semantics() {
        assert!(1.0f64.close_to(&(1.0 + 1e-10), 1e-9));
        assert!(!Rational::new(1, 3).close_to(&Rational::new(1, 3 + 1), 1.0));
        assert!((-1e-12f64).near_zero(1e-9));
        assert!(!(-1e-12f64).is_negative_beyond(1e-9));
        assert!(Rational::new(-1, 1_000_000).is_negative_beyond(1.0));
    }
}
