//! Arbitrary-precision substrate: reals, complexes, truncated power series,
//! Bernoulli numbers, zeta values and the real gamma function.

mod bernoulli;
mod complex;
mod context;
mod gamma;
mod real;
mod series;
mod zeta;

pub use bernoulli::BernoulliCache;
pub use complex::Complex;
pub use context::{Context, GUARD_DIGITS, MIN_DIGITS};
pub use gamma::{gamma_real, ln_gamma, stirling_coefficients};
pub use real::Real;
pub use series::Series;
pub use zeta::{hurwitz_zeta, zeta_special};

pub use num_rational::BigRational;
