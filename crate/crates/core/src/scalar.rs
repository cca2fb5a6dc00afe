//! Arithmetic modes.
//!
//! Every distribution in this crate is generic over a scalar type: exact
//! rationals (`num::BigRational`) where verdicts must be certificates
//! (polytope vertices, dependence orders, countermonotonicity), and `f64`
//! where transcendental quantities live (entropy, the Newton solver, root
//! searches). The scalar type *is* the arithmetic mode; crossing between
//! modes is always an explicit conversion, never a silent coercion.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Common surface of the two arithmetic modes.
///
/// `EXACT` tells tolerance-aware comparisons whether to ignore their epsilon:
/// in exact mode every inequality is strict rational arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Sum<Self>
    + 'static
{
    const EXACT: bool;

    fn from_int(n: i64) -> Self;
    fn ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Lossless import of an `f64` (every finite float is a rational).
    fn from_f64_exact(x: f64) -> Self;
    /// Exact rational image of this value: floats map to the rational they
    /// denote bit for bit, rationals map to themselves.
    fn to_exact(&self) -> BigRational;
    fn abs(&self) -> Self;
    fn floor_i64(&self) -> i64;
    fn is_integer_within(&self, tol: f64) -> bool;

    /// `self <= other`, up to `tol` in floating mode, exact otherwise.
    fn le_tol(&self, other: &Self, tol: f64) -> bool;

    /// `self >= 0`, up to `tol` in floating mode, exact otherwise.
    fn nonneg_tol(&self, tol: f64) -> bool {
        Self::zero().le_tol(self, tol)
    }

    /// `self == other`, up to `tol` in floating mode, exact otherwise.
    fn eq_tol(&self, other: &Self, tol: f64) -> bool {
        self.le_tol(other, tol) && other.le_tol(self, tol)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64_exact(x: f64) -> Self {
        x
    }

    fn to_exact(&self) -> BigRational {
        BigRational::from_float(*self).expect("finite float")
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn floor_i64(&self) -> i64 {
        self.floor() as i64
    }

    fn is_integer_within(&self, tol: f64) -> bool {
        (self - self.round()).abs() <= tol
    }

    fn le_tol(&self, other: &Self, tol: f64) -> bool {
        *self <= *other + tol
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64_exact(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }

    fn to_exact(&self) -> BigRational {
        self.clone()
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn floor_i64(&self) -> i64 {
        self.floor().to_integer().to_i64().expect("small integer")
    }

    fn is_integer_within(&self, _tol: f64) -> bool {
        self.is_integer()
    }

    fn le_tol(&self, other: &Self, _tol: f64) -> bool {
        self <= other
    }
}

/// Parses a number written as a fraction (`"7/20"`), an integer (`"2"`), or a
/// decimal (`"0.35"`, `"-1.5e-2"`) into an exact rational. Decimals convert by
/// their printed digits, so `"0.35"` becomes 7/20, not the nearest binary
/// float.
pub fn rational_from_str(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let invalid = |reason: &str| Error::InvalidNumber {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(invalid("empty"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| invalid("bad numerator"))?;
        let d: BigInt = den.trim().parse().map_err(|_| invalid("bad denominator"))?;
        if d.is_zero() {
            return Err(invalid("zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }

    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i32 = e.parse().map_err(|_| invalid("bad exponent"))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid("no digits"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(invalid("non-digit character"));
    }
    let joined = format!("{int_part}{frac_part}");
    let n: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| invalid("bad digits"))?
    };
    let mut value = BigRational::from_integer(n * BigInt::from(sign));
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut pow = BigRational::one();
    for _ in 0..shift.unsigned_abs() {
        pow = pow * ten.clone();
    }
    if shift >= 0 {
        value = value * pow;
    } else {
        value = value / pow;
    }
    Ok(value)
}

/// Lossless `f64` → rational conversion; rejects NaN and infinities.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidNumber {
        text: format!("{x}"),
        reason: "not finite".to_string(),
    })
}
