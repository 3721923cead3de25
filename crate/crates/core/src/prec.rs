//! Extended-precision scalars and the precision context that governs them.
//!
//! All numerical work in this crate runs on [`ExtReal`], a thin wrapper over
//! an MPFR binary float. A [`PrecisionContext`] fixes the mantissa width,
//! the relative truncation threshold for infinite series, and a hard cap on
//! series length. Arithmetic between two `ExtReal`s rounds at the wider of
//! the two operand precisions, so values created from one context never
//! silently lose digits when mixed with coarser ones.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Governs mantissa width and tolerances for all extended-precision work.
///
/// Immutable after construction; cheap to clone and safe to share across
/// threads.
#[derive(Debug, Clone)]
pub struct PrecisionContext {
    bits: u32,
    series_tol: Float,
    max_terms: usize,
}

/// Default mantissa width in bits.
pub const DEFAULT_BITS: u32 = 256;

/// Default cap on series length; reaching it is an error, never a silent
/// truncation.
pub const DEFAULT_MAX_TERMS: usize = 10_000;

impl PrecisionContext {
    /// Context with the default 256-bit mantissa.
    pub fn standard() -> Self {
        Self::new(DEFAULT_BITS).expect("default precision is valid")
    }

    /// Context with `bits` of mantissa, the default series tolerance
    /// 2^(16-bits), and the default term cap.
    pub fn new(bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::Config(format!(
                "mantissa_bits must be >= 64, got {bits}"
            )));
        }
        let series_tol = two_pow(bits, 16 - i64::from(bits));
        Ok(Self {
            bits,
            series_tol,
            max_terms: DEFAULT_MAX_TERMS,
        })
    }

    /// Context with an explicit series tolerance of 2^`tol_log2` and term cap.
    pub fn with_options(bits: u32, tol_log2: i64, max_terms: usize) -> Result<Self> {
        let mut ctx = Self::new(bits)?;
        if tol_log2 >= 0 || tol_log2 < 1 - i64::from(bits) {
            return Err(Error::Config(format!(
                "series_tol 2^{tol_log2} out of range (0, 2^{}]",
                1 - i64::from(bits)
            )));
        }
        if max_terms == 0 {
            return Err(Error::Config("max_terms must be positive".into()));
        }
        ctx.series_tol = two_pow(bits, tol_log2);
        ctx.max_terms = max_terms;
        Ok(ctx)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Relative truncation threshold for series tails.
    pub fn series_tol(&self) -> ExtReal {
        ExtReal(self.series_tol.clone())
    }

    /// Tolerance for nonlinear identity residuals: 2^(-bits) * 10^52.
    ///
    /// Calibrated so that 256 bits gives 1e-25 and the margin scales
    /// proportionally at other precisions.
    pub fn identity_tol(&self) -> ExtReal {
        let t = two_pow(self.bits, -i64::from(self.bits));
        let scale = Float::with_val(self.bits, 10u32).pow(52u32);
        ExtReal(t * scale)
    }

    /// Zero at context precision.
    pub fn zero(&self) -> ExtReal {
        ExtReal(Float::new(self.bits))
    }

    pub fn one(&self) -> ExtReal {
        self.int(1)
    }

    /// Exact small integer.
    pub fn int(&self, v: i64) -> ExtReal {
        ExtReal(Float::with_val(self.bits, v))
    }

    /// Exact rational `num/den`.
    pub fn frac(&self, num: i64, den: u64) -> ExtReal {
        ExtReal(Float::with_val(self.bits, num) / den)
    }

    /// Exact conversion from an `f64` (every `f64` is representable).
    pub fn real(&self, v: f64) -> ExtReal {
        ExtReal(Float::with_val(self.bits, v))
    }

    /// Parse a decimal literal at context precision.
    pub fn real_from_str(&self, s: &str) -> Result<ExtReal> {
        let incomplete = Float::parse(s)
            .map_err(|e| Error::Config(format!("cannot parse number {s:?}: {e}")))?;
        Ok(ExtReal(Float::with_val(self.bits, incomplete)))
    }

    /// Pi at context precision.
    pub fn pi(&self) -> ExtReal {
        ExtReal(Float::with_val(self.bits, rug::float::Constant::Pi))
    }

    /// 2^`exp` at context precision.
    pub fn two_pow(&self, exp: i64) -> ExtReal {
        ExtReal(two_pow(self.bits, exp))
    }
}

fn two_pow(bits: u32, exp: i64) -> Float {
    let mut f = Float::with_val(bits, 1u32);
    f <<= exp as i32;
    f
}

/// Extended-precision real number.
///
/// Wraps an MPFR float; the mantissa width travels with the value. Binary
/// operations round at the wider operand precision.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct ExtReal(pub(crate) Float);

impl ExtReal {
    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn abs(&self) -> ExtReal {
        ExtReal(self.0.clone().abs())
    }

    pub fn square(&self) -> ExtReal {
        ExtReal(self.0.clone().square())
    }

    pub fn sqrt(&self) -> ExtReal {
        ExtReal(self.0.clone().sqrt())
    }

    pub fn exp(&self) -> ExtReal {
        ExtReal(self.0.clone().exp())
    }

    pub fn ln(&self) -> ExtReal {
        ExtReal(self.0.clone().ln())
    }

    pub fn cos(&self) -> ExtReal {
        ExtReal(self.0.clone().cos())
    }

    pub fn recip(&self) -> ExtReal {
        ExtReal(self.0.clone().recip())
    }

    /// Integer power.
    pub fn powi(&self, e: i32) -> ExtReal {
        ExtReal(self.0.clone().pow(e))
    }

    /// Real power `self^e`; requires `self > 0` for non-integer `e`.
    pub fn pow(&self, e: &ExtReal) -> ExtReal {
        let prec = self.prec().max(e.prec());
        ExtReal(Float::with_val(prec, (&self.0).pow(&e.0)))
    }

    pub fn min(&self, other: &ExtReal) -> ExtReal {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max(&self, other: &ExtReal) -> ExtReal {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Nearest `f64` (may overflow to infinity for huge values).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Round a copy to a different mantissa width.
    pub fn at_prec(&self, bits: u32) -> ExtReal {
        ExtReal(Float::with_val(bits, &self.0))
    }

    /// Scientific-notation rendering with `digits` significant digits and a
    /// sign-and-two-digit exponent, e.g. `-1.234567890e-05`.
    ///
    /// The output is deterministic for a given value, which keeps file
    /// outputs byte-reproducible.
    pub fn to_sci(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if !self.0.is_finite() {
            return self.0.to_string();
        }
        if self.0.is_zero() {
            let frac = if digits > 1 {
                format!(".{}", "0".repeat(digits - 1))
            } else {
                String::new()
            };
            return format!("0{frac}e+00");
        }
        let (sign, mantissa, exp) = self.sci_parts(digits);
        let sign = if sign { "-" } else { "" };
        let (head, tail) = mantissa.split_at(1);
        let exp_sign = if exp < 0 { '-' } else { '+' };
        if tail.is_empty() {
            format!("{sign}{head}e{exp_sign}{:02}", exp.abs())
        } else {
            format!("{sign}{head}.{tail}e{exp_sign}{:02}", exp.abs())
        }
    }

    /// Sign flag, digit string of length `digits`, and decimal exponent such
    /// that the value is `0.mantissa * 10^(exp+1)` read as `d.ddd * 10^exp`.
    fn sci_parts(&self, digits: usize) -> (bool, String, i64) {
        let (sign, digit_str, exp10) =
            self.0
                .to_sign_string_exp_round(10, Some(digits), Round::Nearest);
        let exp10 = exp10.unwrap_or(0) as i64;
        let mut mantissa = digit_str;
        while mantissa.len() < digits {
            mantissa.push('0');
        }
        (sign, mantissa, exp10 - 1)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(30))
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ExtReal(-self.0)
    }
}

impl Neg for &ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ExtReal((-&self.0).complete(self.0.prec()))
    }
}

use rug::ops::CompleteRound;

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExtReal> for &ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: &ExtReal) -> ExtReal {
                let prec = self.0.prec().max(rhs.0.prec());
                ExtReal((&self.0).$method(&rhs.0).complete(prec))
            }
        }
        impl $trait<ExtReal> for &ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: ExtReal) -> ExtReal {
                self.$method(&rhs)
            }
        }
        impl $trait<&ExtReal> for ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: &ExtReal) -> ExtReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<ExtReal> for ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: ExtReal) -> ExtReal {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

macro_rules! impl_scalar_binop {
    ($trait:ident, $method:ident, $scalar:ty) => {
        impl $trait<$scalar> for &ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: $scalar) -> ExtReal {
                ExtReal((&self.0).$method(rhs).complete(self.0.prec()))
            }
        }
        impl $trait<$scalar> for ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: $scalar) -> ExtReal {
                (&self).$method(rhs)
            }
        }
    };
}

impl_scalar_binop!(Add, add, u32);
impl_scalar_binop!(Sub, sub, u32);
impl_scalar_binop!(Mul, mul, u32);
impl_scalar_binop!(Div, div, u32);
impl_scalar_binop!(Add, add, i64);
impl_scalar_binop!(Sub, sub, i64);
impl_scalar_binop!(Mul, mul, i64);
impl_scalar_binop!(Div, div, i64);

impl AddAssign<&ExtReal> for ExtReal {
    fn add_assign(&mut self, rhs: &ExtReal) {
        if rhs.0.prec() > self.0.prec() {
            self.0.set_prec(rhs.0.prec());
        }
        self.0 += &rhs.0;
    }
}

impl AddAssign<ExtReal> for ExtReal {
    fn add_assign(&mut self, rhs: ExtReal) {
        *self += &rhs;
    }
}

impl SubAssign<&ExtReal> for ExtReal {
    fn sub_assign(&mut self, rhs: &ExtReal) {
        if rhs.0.prec() > self.0.prec() {
            self.0.set_prec(rhs.0.prec());
        }
        self.0 -= &rhs.0;
    }
}

impl SubAssign<ExtReal> for ExtReal {
    fn sub_assign(&mut self, rhs: ExtReal) {
        *self -= &rhs;
    }
}

/// Largest magnitude among `terms`; used to normalize identity residuals.
pub fn scale_of(terms: &[&ExtReal]) -> ExtReal {
    let mut best = terms
        .first()
        .map(|t| t.abs())
        .unwrap_or_else(|| ExtReal(Float::new(DEFAULT_BITS)));
    for t in &terms[1..] {
        let a = t.abs();
        if a > best {
            best = a;
        }
    }
    best
}

/// Total order for finite values (used for sorting zeros).
pub fn cmp_finite(a: &ExtReal, b: &ExtReal) -> Ordering {
    a.partial_cmp(b).expect("finite values compare")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_rejects_narrow_mantissa() {
        assert!(PrecisionContext::new(32).is_err());
        assert!(PrecisionContext::new(64).is_ok());
    }

    #[test]
    fn context_rejects_bad_series_tol() {
        // tolerance below 2^(1-bits) violates the invariant
        assert!(PrecisionContext::with_options(128, -200, 100).is_err());
        assert!(PrecisionContext::with_options(128, -100, 100).is_ok());
        assert!(PrecisionContext::with_options(128, 1, 100).is_err());
    }

    #[test]
    fn arithmetic_takes_wider_precision() {
        let c1 = PrecisionContext::new(64).unwrap();
        let c2 = PrecisionContext::new(256).unwrap();
        let a = c1.real(1.5);
        let b = c2.real(2.5);
        assert_eq!((&a + &b).prec(), 256);
        assert_eq!((&b * &a).prec(), 256);
    }

    #[test]
    fn sqrt_two_squares_back() {
        let ctx = PrecisionContext::standard();
        let two = ctx.int(2);
        let r = two.sqrt();
        let err = (r.square() - &two).abs();
        assert!(err < ctx.two_pow(-250), "err = {err}");
    }

    #[test]
    fn sci_rendering_is_fixed_width() {
        let ctx = PrecisionContext::standard();
        assert_eq!(ctx.real(1.0).to_sci(6), "1.00000e+00");
        // 1.5625 rounds to even at four digits
        assert_eq!(ctx.real(-0.015625).to_sci(4), "-1.562e-02");
        assert_eq!(ctx.zero().to_sci(3), "0.00e+00");
        let big = ctx.real_from_str("9.999999e+123").unwrap();
        assert_eq!(big.to_sci(3), "1.00e+124");
    }

    #[test]
    fn parse_round_trips_at_precision() {
        let ctx = PrecisionContext::standard();
        let x = ctx.real_from_str("0.337989120033642364497723842335402874").unwrap();
        let y = ctx.real_from_str(&x.to_sci(70)).unwrap();
        assert!((x - y).abs() < ctx.two_pow(-200));
    }
}
