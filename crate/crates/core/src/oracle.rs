//! Direct-summation ground truth.
//!
//! `S(a)` is split as a partial sum over `n ≤ N` plus a tail rewritten with the
//! binomial series and Hurwitz zeta values:
//!
//! ```text
//! Σ_{n>N} n^{γ-λμ} (1 + (a/n)^λ)^{-μ} = Σ_{k≥0} (-1)^k (μ)_k / k! · a^{λk} · ζ(δ + λk, N+1)
//! ```
//!
//! which converges geometrically once `N ≥ 2|a|`. Each evaluation is repeated at
//! `2N` and the two results must agree to within the requested absolute tolerance.

use crate::model::MathieuParams;
use crate::numerics::{hurwitz_zeta, Complex, Context, Real};
use crate::{Error, Result};

const MAX_TAIL_TERMS: usize = 20_000;
const MIN_CUTOFF: u64 = 32;

/// `S_{μ,γ}(a; λ)` with absolute error at most `target`.
///
/// Any `a` with `n^λ + a^λ ≠ 0` is accepted; the sector restriction only applies
/// to the asymptotic expansions.
pub fn direct_sum(params: &MathieuParams, a: &Complex, target: &Real, ctx: &Context) -> Result<Complex> {
    if !target.is_positive() {
        return Err(Error::Domain("target error must be positive"));
    }
    let n = default_cutoff(a);
    let base = direct_sum_with_cutoff(params, a, target, n, ctx)?;
    let doubled = direct_sum_with_cutoff(params, a, target, 2 * n, ctx)?;
    if (&base - &doubled).abs() > *target {
        return Err(Error::PrecisionEscalation(
            "direct sum disagrees between cutoffs N and 2N",
        ));
    }
    Ok(doubled)
}

/// `N = max(⌈2|a|⌉, 32)`.
pub fn default_cutoff(a: &Complex) -> u64 {
    let two_a = libm::ceil(2.0 * a.abs().to_f64());
    (two_a as u64).max(MIN_CUTOFF)
}

/// A single oracle evaluation with an explicit cutoff `N`; requires `|a| < N + 1`.
pub fn direct_sum_with_cutoff(
    params: &MathieuParams,
    a: &Complex,
    target: &Real,
    cutoff: u64,
    ctx: &Context,
) -> Result<Complex> {
    let lambda = params.lambda;
    let a_lambda = a.powi(lambda);
    let abs_a = a.abs();
    if abs_a >= ctx.int(cutoff as i64 + 1) {
        return Err(Error::Domain("oracle cutoff must exceed |a|"));
    }
    check_no_pole(params, a, &a_lambda, ctx)?;

    let eps = ctx.epsilon();
    let mut total = Complex::zero(ctx);
    let mut magnitude = ctx.zero();
    for n in 1..=cutoff as i64 {
        let nr = ctx.int(n);
        let base = &a_lambda + &Complex::from_real(nr.powi(lambda));
        let denom = match params.mu_integer {
            Some(q) => base.powi(q as i64),
            None => base.powf(&params.mu, ctx),
        };
        let term = Complex::from_real(nr.powi(params.gamma)) / denom;
        magnitude += term.abs();
        total += term;
    }

    // Tail over k; the ratio of successive terms is bounded by
    // ρ_k = (μ+k)/(k+1) · (|a|/(N+1))^λ.
    let q = ctx.int(cutoff as i64 + 1);
    let shrink = (&abs_a / &q).powi(lambda);
    let tenth = target / 10;
    let mut coef = ctx.one(); // (-1)^k (μ)_k / k!
    let mut a_pow = Complex::one(ctx); // a^{λk}
    let mut s = params.delta.clone();
    for k in 0..MAX_TAIL_TERMS as i64 {
        let z = hurwitz_zeta(&s, &q, ctx)?;
        let term = a_pow.scale(&(&coef * &z));
        let mag = term.abs();
        magnitude += &mag;
        total += term;
        let rho = (&params.mu + k + 1) / (k + 2) * &shrink;
        if rho < ctx.one() {
            let bound = &mag * &rho / (ctx.one() - &rho);
            if mag < tenth && bound < tenth {
                let floor = &magnitude * &eps * 10;
                if floor > *target {
                    return Err(Error::PrecisionEscalation(
                        "rounding error of the direct sum exceeds the target",
                    ));
                }
                return Ok(total);
            }
        }
        coef = -(coef * (&params.mu + k) / (k + 1));
        a_pow = &a_pow * &a_lambda;
        s += ctx.int(lambda);
    }
    Err(Error::NotConverged {
        what: "binomial tail of the direct sum",
        limit: MAX_TAIL_TERMS,
    })
}

/// Rejects `a` with `a^λ = -n^λ` for some positive integer `n`.
fn check_no_pole(params: &MathieuParams, a: &Complex, a_lambda: &Complex, ctx: &Context) -> Result<()> {
    let n0 = libm::round(a.abs().to_f64()) as i64;
    if n0 < 1 {
        return Ok(());
    }
    let n_lambda = ctx.int(n0).powi(params.lambda);
    let gap = (a_lambda + &Complex::from_real(n_lambda.clone())).abs();
    if gap < n_lambda * ctx.pow10(-(ctx.digits() as i64)) {
        return Err(Error::Domain("a term of the series has a pole at this a"));
    }
    Ok(())
}

/// Alternating series `Σ (-1)^{n-1} n^γ / (n^λ + a^λ)^μ` via
/// `S̃(a) = S(a) - 2^{1-δ} S(a/2)`.
pub fn direct_sum_alternating(params: &MathieuParams, a: &Complex, target: &Real, ctx: &Context) -> Result<Complex> {
    let quarter = target / 4;
    let full = direct_sum(params, a, &quarter, ctx)?;
    let half_a = a.scale(&ctx.ratio(1, 2));
    let half = direct_sum(params, &half_a, &quarter, ctx)?;
    let two = ctx.int(2);
    let factor = two.powf(&(ctx.one() - &params.delta), ctx);
    Ok(full - half.scale(&factor))
}
