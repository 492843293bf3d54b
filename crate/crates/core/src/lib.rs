//! Arbitrary-precision evaluation of the generalised Mathieu series
//!
//! ```text
//! S(a) = Σ_{n≥1} n^γ / (n^λ + a^λ)^μ          (μ > 0, λ = 2p, γ = 2m, λμ − γ > 1)
//! ```
//!
//! and of its alternating variant, for large real or complex `a` with
//! `|arg a| < π/λ`.
//!
//! Two independent routes are provided:
//!
//! * [`oracle`]: direct summation with a binomial/Hurwitz-zeta tail, accurate to a
//!   caller-supplied absolute tolerance. It is the ground truth for everything else.
//! * [`expansion`]: the large-`a` asymptotics. For even λ and γ the algebraic part is a
//!   *finite* sum and the remainder is an infinite sequence of exponentially small
//!   expansions, one for each ray `X_r = 2πa·e^{iω_r}`. The inverse-factorial
//!   coefficients `c_j` driving those expansions come from [`coeffs`]; when μ is a
//!   positive integer the expansions terminate and give closed forms.
//!
//! Everything runs on the [`numerics`] substrate: a precision [`Context`] passed
//! explicitly to every operation, big-float [`Real`]/[`Complex`] numbers,
//! truncated power series, exact Bernoulli numbers, and the gamma/zeta functions.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod coeffs;
mod error;
pub mod expansion;
pub mod model;
pub mod numerics;
pub mod oracle;

pub use error::{Error, ErrorKind, Result, ValidationError};
pub use model::{make_params, omega, EvalPoint, MathieuParams};
pub use numerics::{Complex, Context, Real, Series};
