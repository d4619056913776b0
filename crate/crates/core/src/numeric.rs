//! Scalar arithmetic used throughout the crate.
//!
//! Two backends implement [`Scalar`]: [`Rational`], an exact canonical fraction over
//! arbitrary-precision integers, and `f64`. Nothing in this module compares values
//! with a tolerance; callers that need one own it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest decimal exponent accepted by the exact parser.
const MAX_DECIMAL_EXPONENT: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number {text:?} at byte {offset}: {reason}")]
    Parse {
        text: String,
        offset: usize,
        reason: &'static str,
    },
}

/// Arithmetic backend selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arith {
    Exact,
    F64,
}

impl Arith {
    pub fn as_str(self) -> &'static str {
        match self {
            Arith::Exact => "exact",
            Arith::F64 => "f64",
        }
    }
}

impl fmt::Display for Arith {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Arith {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Arith::Exact),
            "f64" => Ok(Arith::F64),
            other => Err(format!("unknown arithmetic mode {other:?}")),
        }
    }
}

/// An element of an ordered field.
///
/// The rational realization satisfies the field axioms exactly; `f64` satisfies them
/// up to rounding. Division goes through [`Scalar::checked_div`] so a zero divisor is
/// always reported instead of producing an infinity or NaN.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const ARITH: Arith;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn checked_div(&self, rhs: &Self) -> Result<Self, NumericError>;
    /// Nearest binary64 value.
    fn to_f64(&self) -> f64;
    /// Parses the number grammar: integer, `p/q` fraction, or decimal literal.
    fn parse_text(text: &str) -> Result<Self, NumericError>;
}

/// Canonical fraction: positive denominator, coprime parts, zero stored as `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds the canonical form of `num / den`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, NumericError> {
        let den = den.into();
        if den.is_zero() {
            return Err(NumericError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    /// Exact value of a finite binary64; `None` for infinities and NaN.
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Rational)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
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

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match lex(s)? {
            Literal::Fraction { numer, denom } => {
                let denom_value: BigInt = s[denom.clone()].parse().expect("lexed digits");
                if denom_value.is_zero() {
                    return Err(parse_error(s, denom.start, "zero denominator"));
                }
                let numer_value: BigInt = s[numer].parse().expect("lexed digits");
                Rational::new(numer_value, denom_value)
            }
            Literal::Decimal {
                negative,
                int_digits,
                frac_digits,
                exponent,
            } => {
                let mut digits = String::with_capacity(int_digits.len() + frac_digits.len());
                digits.push_str(&s[int_digits]);
                digits.push_str(&s[frac_digits.clone()]);
                let mut mantissa: BigInt = digits.parse().expect("lexed digits");
                if negative {
                    mantissa = -mantissa;
                }
                let exp = match exponent {
                    Some(range) => {
                        let value: i64 = s[range.clone()]
                            .parse()
                            .ok()
                            .filter(|e: &i64| e.abs() <= MAX_DECIMAL_EXPONENT)
                            .ok_or_else(|| parse_error(s, range.start, "exponent out of range"))?;
                        value
                    }
                    None => 0,
                };
                let scale = exp - frac_digits.len() as i64;
                let ten = BigInt::from(10u32);
                let value = if scale >= 0 {
                    BigRational::from_integer(mantissa * num_traits::pow(ten, scale as usize))
                } else {
                    BigRational::new(mantissa, num_traits::pow(ten, (-scale) as usize))
                };
                Ok(Rational(value))
            }
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl Scalar for Rational {
    const ARITH: Arith = Arith::Exact;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(value: i64) -> Self {
        Rational::from_integer(value)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, NumericError> {
        if rhs.0.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    fn to_f64(&self) -> f64 {
        // ToPrimitive only returns None for NaN, which a finite ratio never produces.
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn parse_text(text: &str) -> Result<Self, NumericError> {
        text.parse()
    }
}

impl Scalar for f64 {
    const ARITH: Arith = Arith::F64;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, NumericError> {
        if *rhs == 0.0 {
            return Err(NumericError::DivisionByZero);
        }
        Ok(self / rhs)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_text(text: &str) -> Result<Self, NumericError> {
        let value = match lex(text)? {
            // Round the exact quotient once rather than dividing two rounded operands.
            Literal::Fraction { .. } => text.parse::<Rational>()?.to_f64(),
            Literal::Decimal { .. } => text
                .parse::<f64>()
                .map_err(|_| parse_error(text, 0, "not a binary64 literal"))?,
        };
        if !value.is_finite() {
            return Err(parse_error(text, 0, "out of range for binary64"));
        }
        Ok(value)
    }
}

/// Formats a scalar: exact values as `p/q` (integers bare), binary64 as the shortest
/// decimal that round-trips.
pub fn format_scalar<S: Scalar>(value: &S) -> String {
    value.to_string()
}

/// Orders two scalars, treating incomparable binary64 values as equal.
pub fn cmp_scalar<S: Scalar>(a: &S, b: &S) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

enum Literal {
    Fraction {
        numer: std::ops::Range<usize>,
        denom: std::ops::Range<usize>,
    },
    Decimal {
        negative: bool,
        int_digits: std::ops::Range<usize>,
        frac_digits: std::ops::Range<usize>,
        exponent: Option<std::ops::Range<usize>>,
    },
}

fn parse_error(text: &str, offset: usize, reason: &'static str) -> NumericError {
    NumericError::Parse {
        text: text.to_owned(),
        offset,
        reason,
    }
}

/// Validates the number grammar and returns the byte ranges of its parts.
fn lex(text: &str) -> Result<Literal, NumericError> {
    let bytes = text.as_bytes();
    let mut pos = 0;

    let sign_then_digits = |pos: &mut usize| -> Result<std::ops::Range<usize>, NumericError> {
        let start = *pos;
        if bytes.get(*pos) == Some(&b'-') {
            *pos += 1;
        }
        let digits_start = *pos;
        while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
            *pos += 1;
        }
        if *pos == digits_start {
            return Err(parse_error(text, *pos, "expected digit"));
        }
        Ok(start..*pos)
    };

    if text.is_empty() {
        return Err(parse_error(text, 0, "empty number"));
    }
    let numer = sign_then_digits(&mut pos)?;
    match bytes.get(pos) {
        None => {
            let negative = bytes[0] == b'-';
            let start = usize::from(negative);
            return Ok(Literal::Decimal {
                negative,
                int_digits: start..numer.end,
                frac_digits: numer.end..numer.end,
                exponent: None,
            });
        }
        Some(b'/') => {
            pos += 1;
            let denom = sign_then_digits(&mut pos)?;
            if pos != bytes.len() {
                return Err(parse_error(text, pos, "unexpected character"));
            }
            return Ok(Literal::Fraction { numer, denom });
        }
        _ => {}
    }

    let negative = bytes[0] == b'-';
    let int_digits = usize::from(negative)..numer.end;
    let mut frac_digits = pos..pos;
    if bytes.get(pos) == Some(&b'.') {
        pos += 1;
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if pos == start {
            return Err(parse_error(text, pos, "expected digit after '.'"));
        }
        frac_digits = start..pos;
    }
    let mut exponent = None;
    if matches!(bytes.get(pos), Some(b'e' | b'E')) {
        pos += 1;
        let start = pos;
        if matches!(bytes.get(pos), Some(b'+' | b'-')) {
            pos += 1;
        }
        let digits_start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if pos == digits_start {
            return Err(parse_error(text, pos, "expected exponent digit"));
        }
        // i64 parsing accepts a leading '+'.
        exponent = Some(start..pos);
    }
    if pos != bytes.len() {
        return Err(parse_error(text, pos, "unexpected character"));
    }
    Ok(Literal::Decimal {
        negative,
        int_digits,
        frac_digits,
        exponent,
    })
}
