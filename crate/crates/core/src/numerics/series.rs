use alloc::vec::Vec;
use core::fmt;

use super::{Context, Real};
use crate::{Error, Result};

/// Power series in one indeterminate truncated at a fixed order `M`.
///
/// Results of every operation are exact modulo `ξ^M`; coefficients beyond the
/// declared order are never consulted.
#[derive(Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<Real>,
    var: &'static str,
}

impl Series {
    /// Wraps coefficients `a_0..a_{M-1}`; the order is their count.
    pub fn from_coeffs(coeffs: Vec<Real>) -> Self {
        assert!(!coeffs.is_empty(), "series order must be at least 1");
        Series { coeffs, var: "ξ" }
    }

    pub fn zero(order: usize, ctx: &Context) -> Self {
        Self::from_coeffs((0..order).map(|_| ctx.zero()).collect())
    }

    pub fn constant(c: Real, order: usize, ctx: &Context) -> Self {
        let mut s = Self::zero(order, ctx);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize, ctx: &Context) -> Self {
        Self::constant(ctx.one(), order, ctx)
    }

    /// The indeterminate itself, `ξ`.
    pub fn variable(order: usize, ctx: &Context) -> Self {
        let mut s = Self::zero(order, ctx);
        if order > 1 {
            s.coeffs[1] = ctx.one();
        }
        s
    }

    pub fn with_name(mut self, var: &'static str) -> Self {
        self.var = var;
        self
    }

    pub fn name(&self) -> &'static str {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &Real {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Real> {
        self.coeffs
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Consistency("series orders differ"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Series, f: impl Fn(&Real, &Real) -> Real) -> Series {
        Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
            var: self.var,
        }
    }

    pub fn scale(&self, k: &Real) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            var: self.var,
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            var: self.var,
        }
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let m = self.order();
        let coeffs = (0..m)
            .map(|n| {
                let mut acc = &self.coeffs[0] * &other.coeffs[n];
                for k in 1..=n {
                    if !self.coeffs[k].is_zero() && !other.coeffs[n - k].is_zero() {
                        acc += &self.coeffs[k] * &other.coeffs[n - k];
                    }
                }
                acc
            })
            .collect();
        Ok(Series { coeffs, var: self.var })
    }

    /// `1/self`; the constant term must be non-zero.
    pub fn recip(&self) -> Result<Series> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::Domain("reciprocal of a series with zero constant term"));
        }
        let inv0 = f0.recip();
        let mut h: Vec<Real> = Vec::with_capacity(self.order());
        h.push(inv0.clone());
        for n in 1..self.order() {
            let mut acc = &self.coeffs[1] * &h[n - 1];
            for k in 2..=n {
                acc += &self.coeffs[k] * &h[n - k];
            }
            h.push(-(acc * &inv0));
        }
        Ok(Series {
            coeffs: h,
            var: self.var,
        })
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        self.mul(&other.recip()?)
    }

    /// `exp(self)`, via `n f_n = Σ_{k=1}^{n} k g_k f_{n-k}`.
    pub fn exp(&self, ctx: &Context) -> Series {
        let g = &self.coeffs;
        let mut f: Vec<Real> = Vec::with_capacity(self.order());
        f.push(if g[0].is_zero() { ctx.one() } else { g[0].exp(ctx) });
        for n in 1..self.order() {
            let mut acc = ctx.zero();
            for k in 1..=n {
                if !g[k].is_zero() {
                    acc += &g[k] * &f[n - k] * k as i64;
                }
            }
            f.push(acc / n as i64);
        }
        Series {
            coeffs: f,
            var: self.var,
        }
    }

    /// `log(self)`; the constant term must be exactly one.
    pub fn log(&self, ctx: &Context) -> Result<Series> {
        let f = &self.coeffs;
        if f[0] != ctx.one() {
            return Err(Error::Domain("log of a series whose constant term is not 1"));
        }
        let mut g: Vec<Real> = Vec::with_capacity(self.order());
        g.push(ctx.zero());
        for n in 1..self.order() {
            let mut acc = &f[n] * n as i64;
            for k in 1..n {
                if !g[k].is_zero() {
                    acc -= &g[k] * &f[n - k] * k as i64;
                }
            }
            g.push(acc / n as i64);
        }
        Ok(Series {
            coeffs: g,
            var: self.var,
        })
    }

    /// `self(inner(ξ))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Domain("composition with a non-zero constant term"));
        }
        let m = self.order();
        let mut acc = Series {
            coeffs: inner.coeffs.iter().map(Real::zero_like).collect(),
            var: self.var,
        };
        acc.coeffs[0] = self.coeffs[m - 1].clone();
        for i in (0..m - 1).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({:?}){}^{}", c, self.var, i)?;
        }
        write!(f, " + O({}^{})", self.var, self.order())
    }
}
