use alloc::vec::Vec;

use super::{Context, Real, Series};
use crate::{Error, Result};

const MAX_STIRLING_TERMS: usize = 400;

/// Stirling coefficients `γ_0..γ_{M-1}` in the normalisation
/// `Γ*(z) ~ Σ (-1)^k γ_k z^{-k}`, where `Γ*(z) = Γ(z) / (√(2π) z^{z-½} e^{-z})`.
///
/// Built by exponentiating `ln Γ*(z) = Σ_{n≥1} B_{2n} / (2n(2n-1) z^{2n-1})` as a
/// series in `1/z`.
pub fn stirling_coefficients(m: usize, ctx: &Context) -> Vec<Real> {
    assert!(m >= 1, "at least one Stirling coefficient");
    let mut log = Series::zero(m, ctx).into_coeffs();
    for (n, c) in log.iter_mut().enumerate().skip(1).step_by(2) {
        let k = (n + 1) as i64; // 2n' with n = 2n' - 1
        *c = ctx.bernoulli_real(k as usize) / (k * (k - 1));
    }
    Series::from_coeffs(log)
        .exp(ctx)
        .into_coeffs()
        .into_iter()
        .enumerate()
        .map(|(k, g)| if k % 2 == 1 { -g } else { g })
        .collect()
}

/// `(z-½)ln z - z + ½ln 2π + Σ B_{2k}/(2k(2k-1)z^{2k-1})`, summed until the next
/// correction drops below working precision. For real `z > 0` the error is bounded
/// by the first omitted term.
fn stirling_ln_gamma(z: &Real, ctx: &Context) -> Result<Real> {
    let two_pi = ctx.pi() * 2;
    let mut sum = (z - ctx.ratio(1, 2)) * z.ln(ctx) - z + two_pi.ln(ctx) / 2;
    let eps = ctx.epsilon() / 100;
    let zinv2 = (z * z).recip();
    let mut zpow = z.recip();
    for k in 1..=MAX_STIRLING_TERMS as i64 {
        let term = ctx.bernoulli_real(2 * k as usize) / (2 * k * (2 * k - 1)) * &zpow;
        let done = term.abs() < eps;
        sum += term;
        if done {
            return Ok(sum);
        }
        zpow *= &zinv2;
    }
    Err(Error::NotConverged {
        what: "Stirling series",
        limit: MAX_STIRLING_TERMS,
    })
}

/// Shift count taking `x` to where the Stirling series reaches working precision.
fn upward_shift(x: &Real, ctx: &Context) -> u64 {
    let threshold = ctx.working_digits() as f64 * 0.5;
    let xf = x.to_f64();
    if xf >= threshold {
        0
    } else {
        libm::ceil(threshold - xf) as u64
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: &Real, ctx: &Context) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::Domain("ln_gamma requires a positive argument"));
    }
    let n = upward_shift(x, ctx);
    if n == 0 {
        return stirling_ln_gamma(x, ctx);
    }
    let (z, prod) = shifted(x, n, ctx);
    Ok(stirling_ln_gamma(&z, ctx)? - prod.ln(ctx))
}

/// `(x + n, x(x+1)…(x+n-1))`.
fn shifted(x: &Real, n: u64, ctx: &Context) -> (Real, Real) {
    let mut prod = ctx.one();
    for i in 0..n as i64 {
        prod *= x + i;
    }
    (x + n as i64, prod)
}

/// `Γ(x)` for real `x` away from the poles `0, -1, -2, …`.
///
/// Shifts the argument upward, applies the Stirling series, and uses the
/// reflection formula for `x < ½`.
pub fn gamma_real(x: &Real, ctx: &Context) -> Result<Real> {
    if !x.is_finite() {
        return Err(Error::Domain("gamma of a non-finite value"));
    }
    if x.is_integer() && !x.is_positive() {
        return Err(Error::Domain("gamma function pole at a non-positive integer"));
    }
    let half = ctx.ratio(1, 2);
    if *x < half {
        let pi = ctx.pi();
        let s = (&pi * x).sin(ctx);
        let g = gamma_real(&(ctx.one() - x), ctx)?;
        return Ok(pi / (s * g));
    }
    let n = upward_shift(x, ctx);
    let (z, prod) = shifted(x, n, ctx);
    Ok(stirling_ln_gamma(&z, ctx)?.exp(ctx) / prod)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: &Real, b: &Real) -> Real {
        ((a - b) / b).abs()
    }

    #[test]
    fn stirling_coefficients_match_known_values() {
        let ctx = Context::new(40).unwrap();
        let g = stirling_coefficients(5, &ctx);
        let want = [
            ctx.one(),
            ctx.ratio(-1, 12),
            ctx.ratio(1, 288),
            ctx.ratio(139, 51840),
            ctx.ratio(-571, 2488320),
        ];
        for (k, (a, b)) in g.iter().zip(&want).enumerate() {
            assert!(rel(a, b) < ctx.epsilon() * 10, "γ_{k} = {a:?}");
        }
    }

    #[test]
    fn small_values() {
        let ctx = Context::new(40).unwrap();
        let tol = ctx.pow10(5 - 40);
        assert!(rel(&gamma_real(&ctx.one(), &ctx).unwrap(), &ctx.one()) < tol);
        let sqrt_pi = ctx.pi().sqrt();
        assert!(rel(&gamma_real(&ctx.ratio(1, 2), &ctx).unwrap(), &sqrt_pi) < tol);
        assert!(rel(&gamma_real(&ctx.int(6), &ctx).unwrap(), &ctx.int(120)) < tol);
        // Γ(-1/2) = -2√π
        let neg = gamma_real(&ctx.ratio(-1, 2), &ctx).unwrap();
        assert!(rel(&neg, &(sqrt_pi * -2)) < tol);
    }

    #[test]
    fn poles_are_rejected() {
        let ctx = Context::new(30).unwrap();
        for v in [0, -1, -7] {
            assert!(matches!(gamma_real(&ctx.int(v), &ctx), Err(Error::Domain(_))));
        }
        assert!(ln_gamma(&ctx.int(-1), &ctx).is_err());
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        let ctx = Context::new(40).unwrap();
        for x in [ctx.ratio(1, 3), ctx.ratio(17, 2), ctx.int(60), ctx.int(3000)] {
            let lg = ln_gamma(&x, &ctx).unwrap();
            let g = gamma_real(&x, &ctx).unwrap();
            assert!(rel(&lg.exp(&ctx), &g) < ctx.pow10(-38), "x = {x:?}");
        }
    }
}
