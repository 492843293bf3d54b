use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::LOG10_2;
use core::fmt;
use core::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use astro_float::{BigFloat, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::Context;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

const WORD_BITS: usize = core::mem::size_of::<Word>() * 8;

/// Binary floating-point real with a per-value mantissa length.
///
/// Arithmetic operators round to the larger precision of their operands.
/// Transcendental functions take the [`Context`] because they need its constant
/// cache; they round to the larger of the operand and context precisions.
#[derive(Clone)]
pub struct Real(pub(crate) BigFloat);

impl Real {
    pub(crate) fn from_i64(v: i64, bits: usize) -> Self {
        Real(BigFloat::from_i64(v, bits))
    }

    pub(crate) fn from_f64(v: f64, bits: usize) -> Self {
        Real(BigFloat::from_f64(v, bits))
    }

    pub(crate) fn from_bigint(v: &BigInt, bits: usize) -> Self {
        let (sign, digits) = v.to_u64_digits();
        let work = bits.max(digits.len() * 64 + 64);
        let mut acc = BigFloat::from_u64(0, work);
        for d in digits.iter().rev() {
            if let Some(e) = acc.exponent().filter(|_| !acc.is_zero()) {
                acc.set_exponent(e + 64);
            }
            acc = acc.add(&BigFloat::from_u64(*d, 64), work, RM);
        }
        // Rounding a finite value to a valid word-multiple precision cannot fail.
        let _ = acc.set_precision(bits, RM);
        if sign == num_bigint::Sign::Minus {
            acc.inv_sign();
        }
        Real(acc)
    }

    /// Mantissa length in bits.
    pub fn precision(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(WORD_BITS)
    }

    fn joint_precision(&self, other: &Real) -> usize {
        self.precision().max(other.precision())
    }

    fn ctx_precision(&self, ctx: &Context) -> usize {
        self.precision().max(ctx.bits())
    }

    /// Rounds to `bits` of mantissa.
    pub fn with_precision(&self, bits: usize) -> Real {
        let mut v = self.0.clone();
        let _ = v.set_precision(bits, RM);
        Real(v)
    }

    /// Zero at this value's precision.
    pub fn zero_like(&self) -> Real {
        Real::from_i64(0, self.precision())
    }

    /// One at this value's precision.
    pub fn one_like(&self) -> Real {
        Real::from_i64(1, self.precision())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.is_finite() && self.0.is_int()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.abs())
    }

    pub fn recip(&self) -> Real {
        Real(self.0.reciprocal(self.precision(), RM))
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.sqrt(self.precision(), RM))
    }

    pub fn floor(&self) -> Real {
        Real(self.0.floor())
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, n: i64) -> Real {
        let p = self.precision();
        let v = Real(self.0.powi(n.unsigned_abs() as usize, p, RM));
        if n < 0 {
            v.recip()
        } else {
            v
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i32) -> Real {
        let mut v = self.0.clone();
        if let Some(e) = v.exponent().filter(|_| !self.is_zero()) {
            v.set_exponent(e + k);
        }
        Real(v)
    }

    pub fn exp(&self, ctx: &Context) -> Real {
        Real(self.0.exp(self.ctx_precision(ctx), RM, &mut ctx.consts()))
    }

    /// Natural logarithm; the argument must be positive.
    pub fn ln(&self, ctx: &Context) -> Real {
        Real(self.0.ln(self.ctx_precision(ctx), RM, &mut ctx.consts()))
    }

    /// `self^y` for positive `self`.
    pub fn powf(&self, y: &Real, ctx: &Context) -> Real {
        debug_assert!(!self.is_negative());
        if self.is_zero() {
            return self.clone();
        }
        (self.ln(ctx) * y).exp(ctx)
    }

    pub fn sin(&self, ctx: &Context) -> Real {
        Real(self.0.sin(self.ctx_precision(ctx), RM, &mut ctx.consts()))
    }

    pub fn cos(&self, ctx: &Context) -> Real {
        Real(self.0.cos(self.ctx_precision(ctx), RM, &mut ctx.consts()))
    }

    pub fn sinh(&self, ctx: &Context) -> Real {
        Real(self.0.sinh(self.ctx_precision(ctx), RM, &mut ctx.consts()))
    }

    pub fn cosh(&self, ctx: &Context) -> Real {
        Real(self.0.cosh(self.ctx_precision(ctx), RM, &mut ctx.consts()))
    }

    pub fn atan(&self, ctx: &Context) -> Real {
        Real(self.0.atan(self.ctx_precision(ctx), RM, &mut ctx.consts()))
    }

    /// Four-quadrant arctangent of `y/x`, in `(-π, π]`.
    pub fn atan2(y: &Real, x: &Real, ctx: &Context) -> Real {
        let pi = ctx.pi();
        if x.is_zero() {
            return match y.sign() {
                0 => ctx.zero(),
                s => pi.mul_pow2(-1) * s as i64,
            };
        }
        if y.abs() <= x.abs() {
            let base = (y / x).atan(ctx);
            match (x.is_negative(), y.is_negative()) {
                (false, _) => base,
                (true, false) => base + pi,
                (true, true) => base - pi,
            }
        } else {
            let base = (x / y).atan(ctx);
            let half_pi = pi.mul_pow2(-1);
            if y.is_negative() {
                -half_pi - base
            } else {
                half_pi - base
            }
        }
    }

    /// -1, 0 or 1.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Splits into `(negative, m, e)` with `|self| = m·2^e`.
    fn to_parts(&self) -> Option<(bool, BigUint, i64)> {
        let (words, _, sign, e, _) = self.0.as_raw_parts()?;
        let mut bytes = Vec::with_capacity(words.len() * WORD_BITS / 8);
        for w in words {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        let m = BigUint::from_bytes_le(&bytes);
        Some((sign == Sign::Neg, m, e as i64 - (words.len() * WORD_BITS) as i64))
    }

    /// Approximate `log2 |self|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        match self.0.as_raw_parts() {
            Some((words, _, _, e, _)) => {
                let top = words[words.len() - 1] as f64 / libm::ldexp(1.0, WORD_BITS as i32);
                e as f64 + libm::log2(top)
            }
            None => f64::INFINITY,
        }
    }

    /// Approximate `log10 |self|`; `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        self.log2_abs() * LOG10_2
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.0.is_nan() {
            return f64::NAN;
        }
        match self.0.as_raw_parts() {
            Some((words, _, sign, e, _)) => {
                let n = words.len();
                let mut frac = words[n - 1] as f64 / libm::ldexp(1.0, WORD_BITS as i32);
                if n > 1 {
                    frac += words[n - 2] as f64 / libm::ldexp(1.0, 2 * WORD_BITS as i32);
                }
                let v = libm::ldexp(frac, e);
                if sign == Sign::Neg {
                    -v
                } else {
                    v
                }
            }
            None if self.0.is_inf_neg() => f64::NEG_INFINITY,
            None => f64::INFINITY,
        }
    }

    /// Exact integer value, if `self` is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        if self.is_zero() {
            return Some(0);
        }
        let (neg, m, e) = self.to_parts()?;
        let mag = if e >= 0 {
            if e > 64 {
                return None;
            }
            m << (e as usize)
        } else {
            m >> ((-e) as usize)
        };
        let v = BigInt::from(mag);
        (if neg { -v } else { v }).to_i64()
    }

    /// Scientific notation with `digits` significant digits, correctly rounded
    /// (half away from zero), e.g. `-1.54766e-12`.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.0.is_nan() {
            return "NaN".into();
        }
        if self.0.is_inf() {
            return if self.0.is_inf_neg() { "-inf" } else { "inf" }.into();
        }
        if self.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let Some((neg, m, e2)) = self.to_parts() else {
            return "NaN".into();
        };
        let ten = BigUint::from(10u32);
        let upper = num_traits::pow(ten.clone(), digits);
        let lower = num_traits::pow(ten.clone(), digits - 1);
        let mut e10 = libm::floor(self.log10_abs()) as i64;
        let q = loop {
            let k = digits as i64 - 1 - e10;
            let mut num = m.clone();
            let mut den = BigUint::one();
            if e2 >= 0 {
                num <<= e2 as usize;
            } else {
                den <<= (-e2) as usize;
            }
            if k >= 0 {
                num *= num_traits::pow(ten.clone(), k as usize);
            } else {
                den *= num_traits::pow(ten.clone(), (-k) as usize);
            }
            let q = (num * 2u32 + &den) / (den * 2u32);
            if q >= upper {
                e10 += 1;
            } else if q < lower && !q.is_zero() {
                e10 -= 1;
            } else {
                break q;
            }
        };
        let s = q.to_string();
        let mut out = String::with_capacity(digits + 8);
        if neg {
            out.push('-');
        }
        out.push_str(&s[..1]);
        if s.len() > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push('e');
        out.push_str(&e10.to_string());
        out
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(25))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(f.precision().unwrap_or(17)))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let p = self.joint_precision(rhs);
                Real(self.0.$method(&rhs.0, p, RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
        impl $tr<i64> for &Real {
            type Output = Real;
            fn $method(self, rhs: i64) -> Real {
                let p = self.precision();
                Real(self.0.$method(&BigFloat::from_i64(rhs, p), p, RM))
            }
        }
        impl $tr<i64> for Real {
            type Output = Real;
            fn $method(self, rhs: i64) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $assign_tr<&Real> for Real {
            fn $assign_method(&mut self, rhs: &Real) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_tr<Real> for Real {
            fn $assign_method(&mut self, rhs: Real) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign);
real_binop!(Sub, sub, SubAssign, sub_assign);
real_binop!(Mul, mul, MulAssign, mul_assign);
real_binop!(Div, div, DivAssign, div_assign);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.clone().neg())
    }
}
