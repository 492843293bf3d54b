use core::cell::{RefCell, RefMut};
use core::f64::consts::LOG2_10;

use astro_float::Consts;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::bernoulli::BernoulliCache;
use super::real::{Real, RM};
use crate::{Error, Result, ValidationError};

/// Extra decimal digits carried internally on top of the requested precision.
pub const GUARD_DIGITS: u32 = 15;
/// Smallest precision a [`Context`] accepts.
pub const MIN_DIGITS: u32 = 20;

/// Precision context passed to every operation.
///
/// A context asks for `D` significant decimal digits in results and computes with
/// `D + GUARD_DIGITS`. It also owns the constant cache used by the big-float
/// transcendental functions and a Bernoulli-number cache, so it is `!Sync`: give
/// each thread its own context (they are cheap to build).
pub struct Context {
    digits: u32,
    bits: usize,
    consts: RefCell<Consts>,
    bernoulli: RefCell<BernoulliCache>,
    bernoulli_reals: RefCell<alloc::vec::Vec<Real>>,
}

impl core::fmt::Debug for Context {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Context")
            .field("digits", &self.digits)
            .field("bits", &self.bits)
            .finish()
    }
}

impl Context {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(ValidationError::Precision {
                min: MIN_DIGITS,
                got: digits,
            }
            .into());
        }
        Ok(Self::with_digits(digits))
    }

    fn with_digits(digits: u32) -> Self {
        let working = digits + GUARD_DIGITS;
        let bits = libm::ceil(working as f64 * LOG2_10) as usize + 8;
        Context {
            digits,
            bits,
            consts: RefCell::new(Consts::new().expect("constant cache allocation")),
            bernoulli: RefCell::new(BernoulliCache::new()),
            bernoulli_reals: RefCell::new(alloc::vec::Vec::new()),
        }
    }

    /// A fresh context with `extra` more digits.
    pub fn elevated(&self, extra: u32) -> Context {
        Self::with_digits(self.digits + extra)
    }

    /// Requested significant digits `D`.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Digits actually carried, `D + GUARD_DIGITS`.
    pub fn working_digits(&self) -> u32 {
        self.digits + GUARD_DIGITS
    }

    /// Binary precision of freshly created numbers.
    pub fn bits(&self) -> usize {
        self.bits
    }

    /// `10^-(D + GUARD_DIGITS)`.
    pub fn epsilon(&self) -> Real {
        self.pow10(-(self.working_digits() as i64))
    }

    /// Relative cut-off for truncating convergent exponential sums, `10^-(D+5)`.
    pub fn sum_tolerance(&self) -> Real {
        self.pow10(-(self.digits as i64 + 5))
    }

    pub(crate) fn consts(&self) -> RefMut<'_, Consts> {
        self.consts.borrow_mut()
    }

    pub fn zero(&self) -> Real {
        self.int(0)
    }

    pub fn one(&self) -> Real {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Real {
        Real::from_i64(v, self.bits)
    }

    /// Exact conversion of a binary64 value.
    pub fn from_f64(&self, v: f64) -> Real {
        Real::from_f64(v, self.bits)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Real {
        self.int(num) / self.int(den)
    }

    pub fn from_bigint(&self, v: &BigInt) -> Real {
        Real::from_bigint(v, self.bits)
    }

    pub fn from_rational(&self, v: &BigRational) -> Real {
        self.from_bigint(v.numer()) / self.from_bigint(v.denom())
    }

    pub fn pow10(&self, e: i64) -> Real {
        let ten = self.int(10);
        if e >= 0 {
            ten.powi(e)
        } else {
            ten.powi(-e).recip()
        }
    }

    pub fn pi(&self) -> Real {
        Real(self.consts().pi(self.bits, RM))
    }

    /// Parses a plain decimal literal such as `-1.25`, `5`, `3e-2`.
    ///
    /// The conversion is exact up to the final rounding to working precision.
    pub fn parse(&self, s: &str) -> Result<Real> {
        let (mantissa, exp10) = parse_decimal(s).ok_or_else(|| Error::Parse(s.into()))?;
        let m = self.from_bigint(&mantissa);
        if exp10 >= 0 {
            Ok(m * self.from_bigint(&num_traits::pow(BigInt::from(10), exp10 as usize)))
        } else {
            Ok(m / self.from_bigint(&num_traits::pow(BigInt::from(10), (-exp10) as usize)))
        }
    }

    /// Bernoulli number `B_k` (with `B_1 = -1/2`) from the shared cache.
    pub fn bernoulli(&self, k: usize) -> BigRational {
        self.bernoulli.borrow_mut().get(k)
    }

    /// `B_k` rounded to working precision.
    pub fn bernoulli_real(&self, k: usize) -> Real {
        let mut cache = self.bernoulli_reals.borrow_mut();
        while cache.len() <= k {
            let b = self.bernoulli(cache.len());
            cache.push(self.from_rational(&b));
        }
        cache[k].clone()
    }
}

/// Splits a decimal literal into an integer mantissa and a power of ten.
fn parse_decimal(s: &str) -> Option<(BigInt, i64)> {
    let s = s.trim();
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match body.as_bytes().first()? {
        b'-' => (true, &body[1..]),
        b'+' => (false, &body[1..]),
        _ => (false, body),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut digits = alloc::string::String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let mut m = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    if neg {
        m = -m;
    }
    Some((m, exp - frac_part.len() as i64))
}
