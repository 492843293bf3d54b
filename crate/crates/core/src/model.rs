//! Validated parameters and evaluation points.

use alloc::vec::Vec;

use crate::numerics::{Complex, Context, Real};
use crate::{Error, Result, ValidationError};

/// A validated parameter triple `(μ, γ = 2m, λ = 2p)` with its derived quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct MathieuParams {
    pub mu: Real,
    pub gamma: i64,
    pub lambda: i64,
    pub p: i64,
    pub m: i64,
    /// `δ = λμ - γ`, greater than 1.
    pub delta: Real,
    /// `ϑ = μ + γ`.
    pub theta: Real,
    pub alternating: bool,
    /// `Some(q)` when μ is exactly the positive integer `q`.
    pub mu_integer: Option<u32>,
}

/// Validates `(μ, γ, λ)` and derives `p, m, δ, ϑ`.
pub fn make_params(mu: Real, gamma: i64, lambda: i64, alternating: bool) -> Result<MathieuParams, ValidationError> {
    if !mu.is_positive() || !mu.is_finite() {
        return Err(ValidationError::NonPositiveMu);
    }
    if lambda <= 0 {
        return Err(ValidationError::NonPositiveLambda(lambda));
    }
    if lambda % 2 != 0 {
        return Err(ValidationError::OddLambda(lambda));
    }
    if gamma % 2 != 0 {
        return Err(ValidationError::OddGamma(gamma));
    }
    let delta = &mu * lambda - gamma;
    if delta <= mu.one_like() {
        return Err(ValidationError::Divergent { delta: delta.to_f64() });
    }
    // Γ((γ+1)/λ) needs (γ+1)/λ off the non-positive integers; parity rules it out.
    if (gamma + 1) % lambda == 0 {
        return Err(ValidationError::GammaPole);
    }
    let theta = &mu + gamma;
    let mu_integer = if mu.is_integer() {
        mu.to_i64().and_then(|q| u32::try_from(q).ok())
    } else {
        None
    };
    Ok(MathieuParams {
        p: lambda / 2,
        m: gamma / 2,
        delta,
        theta,
        mu,
        gamma,
        lambda,
        alternating,
        mu_integer,
    })
}

impl MathieuParams {
    /// Same parameters with the alternating flag set as given.
    pub fn with_alternating(&self, alternating: bool) -> Self {
        MathieuParams {
            alternating,
            ..self.clone()
        }
    }
}

/// `ω_r = (p - 1 - 2r)π / (2p)` for `0 ≤ r < p`.
pub fn omega(p: i64, r: i64, ctx: &Context) -> Result<Real> {
    if p < 1 || r < 0 || r >= p {
        return Err(Error::Domain("omega index out of range"));
    }
    Ok(ctx.pi() * (p - 1 - 2 * r) / (2 * p))
}

/// An evaluation point inside the sector `|arg a| < π/λ`.
#[derive(Debug, Clone)]
pub struct EvalPoint {
    pub a: Complex,
    pub arg: Real,
    /// `X = 2πa`.
    pub x: Complex,
    /// `ω_0, …, ω_{p-1}`.
    pub omegas: Vec<Real>,
    /// `X_r = X e^{iω_r}`.
    pub x_r: Vec<Complex>,
}

impl EvalPoint {
    pub fn new(params: &MathieuParams, a: Complex, ctx: &Context) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let arg = a.arg(ctx);
        let limit = ctx.pi() / params.lambda;
        if arg.abs() >= limit {
            let deg = 180.0 / core::f64::consts::PI;
            return Err(Error::SectorViolation {
                arg_deg: arg.to_f64() * deg,
                limit_deg: 180.0 / params.lambda as f64,
            });
        }
        let x = a.scale(&(ctx.pi() * 2));
        let mut omegas = Vec::with_capacity(params.p as usize);
        let mut x_r = Vec::with_capacity(params.p as usize);
        for r in 0..params.p {
            let w = omega(params.p, r, ctx)?;
            let xr = if w.is_zero() {
                x.clone()
            } else {
                &x * &Complex::cis(&w, ctx)
            };
            if !xr.re.is_positive() {
                return Err(Error::SectorViolation {
                    arg_deg: arg.to_f64() * 180.0 / core::f64::consts::PI,
                    limit_deg: 180.0 / params.lambda as f64,
                });
            }
            omegas.push(w);
            x_r.push(xr);
        }
        Ok(EvalPoint { a, arg, x, omegas, x_r })
    }

    /// Index and value of the smallest `Re X_r`.
    pub fn min_re_x(&self) -> (usize, &Real) {
        let mut best = 0;
        for (i, x) in self.x_r.iter().enumerate() {
            if x.re < self.x_r[best].re {
                best = i;
            }
        }
        (best, &self.x_r[best].re)
    }
}
