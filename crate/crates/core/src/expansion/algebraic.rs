use crate::model::MathieuParams;
use crate::numerics::{gamma_real, zeta_special, Complex, Context, Real};
use crate::{Error, Result};

/// Largest `k` with `|m| - kp ≥ 0`; only meaningful for `m ≤ 0`.
pub fn kstar(m: i64, p: i64) -> Result<i64> {
    if m > 0 {
        return Err(Error::Domain("kstar is only defined for m <= 0"));
    }
    if p < 1 {
        return Err(Error::Domain("p must be positive"));
    }
    Ok(-m / p)
}

/// `z^e` with `powi` for integral `e`.
pub(crate) fn cpow(z: &Complex, e: &Real, ctx: &Context) -> Complex {
    match e.to_i64().filter(|_| e.is_integer()) {
        Some(n) => z.powi(n),
        None => z.powf(e, ctx),
    }
}

/// Shared sum `a^{-λμ} Σ_{k≤k*} (-1)^k (μ)_k/k! · a^{-λk} · w_k · ζ(-γ-λk)`.
fn algebraic_sum(params: &MathieuParams, a: &Complex, weight: impl Fn(i64) -> Real, ctx: &Context) -> Result<Complex> {
    if params.m > 0 {
        return Ok(Complex::zero(ctx));
    }
    let k_max = kstar(params.m, params.p)?;
    let lead = cpow(a, &(-(&params.mu * params.lambda)), ctx);
    let a_neg_lambda = a.powi(-params.lambda);
    let mut coef = ctx.one();
    let mut a_pow = Complex::one(ctx);
    let mut sum = Complex::zero(ctx);
    for k in 0..=k_max {
        let z = zeta_special(-params.gamma - params.lambda * k, ctx)?;
        sum += a_pow.scale(&(&coef * z * weight(k)));
        coef = -(coef * (&params.mu + k) / (k + 1));
        a_pow = &a_pow * &a_neg_lambda;
    }
    Ok(&lead * &sum)
}

/// Algebraic part `H`: zero for `m ≥ 1`, otherwise the finite sum with `ζ(-γ-λk)`.
pub fn algebraic_h(params: &MathieuParams, a: &Complex, ctx: &Context) -> Result<Complex> {
    algebraic_sum(params, a, |_| ctx.one(), ctx)
}

/// Alternating analogue `H̃`, each term weighted by `1 - 2^{1+γ+λk}`.
pub fn h_alternating(params: &MathieuParams, a: &Complex, ctx: &Context) -> Result<Complex> {
    algebraic_sum(
        params,
        a,
        |k| {
            let e = 1 + params.gamma + params.lambda * k;
            ctx.one() - ctx.int(2).powi(e)
        },
        ctx,
    )
}

/// `Γ((γ+1)/λ) Γ(μ-(γ+1)/λ) / (λ Γ(μ) a^{δ-1})`.
pub fn gamma_term(params: &MathieuParams, a: &Complex, ctx: &Context) -> Result<Complex> {
    let t = ctx.ratio(params.gamma + 1, params.lambda);
    let num = gamma_real(&t, ctx)? * gamma_real(&(&params.mu - &t), ctx)?;
    let den = gamma_real(&params.mu, ctx)? * params.lambda;
    let power = cpow(a, &(ctx.one() - &params.delta), ctx);
    Ok(power.scale(&(num / den)))
}

/// `(-1)^m / Γ(μ) · (π/p)^μ · a^{μ-δ}`.
pub fn exponential_prefactor(params: &MathieuParams, a: &Complex, ctx: &Context) -> Result<Complex> {
    let scale = (ctx.pi() / params.p).powf(&params.mu, ctx) / gamma_real(&params.mu, ctx)?;
    let signed = if params.m.rem_euclid(2) == 1 { -scale } else { scale };
    Ok(cpow(a, &(&params.mu - &params.delta), ctx).scale(&signed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_params;

    #[test]
    fn kstar_values() {
        assert_eq!(kstar(0, 3).unwrap(), 0);
        assert_eq!(kstar(-2, 1).unwrap(), 2);
        assert_eq!(kstar(-1, 2).unwrap(), 0);
        assert!(kstar(1, 1).is_err());
    }

    #[test]
    fn worked_algebraic_parts() {
        let ctx = Context::new(30).unwrap();
        let a = Complex::from_real(ctx.int(5));
        let a5 = ctx.int(5).powi(5);
        let h = |g| algebraic_h(&make_params(ctx.ratio(5, 4), g, 4, false).unwrap(), &a, &ctx).unwrap();
        assert!(h(2).is_zero());
        let want0 = -(&a5 * 2).recip();
        assert!((&h(0).re - &want0).abs() < ctx.pow10(-40));
        let pi = ctx.pi();
        let want_m2 = &pi * &pi / (&a5 * 6);
        assert!((&h(-2).re - &want_m2).abs() < ctx.pow10(-40));
    }

    #[test]
    fn alternating_sign_flip_at_k0() {
        let ctx = Context::new(30).unwrap();
        let a = Complex::from_real(ctx.int(3));
        let p = make_params(ctx.ratio(5, 4), 0, 4, true).unwrap();
        let h = algebraic_h(&p, &a, &ctx).unwrap();
        let ht = h_alternating(&p, &a, &ctx).unwrap();
        assert!((&ht.re + &h.re).abs() < ctx.pow10(-40));
    }

    #[test]
    fn several_algebraic_terms() {
        // γ=-4, λ=2, μ=3: k* = 2 but ζ(2-2k)... k=0: ζ(4), k=1: ζ(2), k=2: ζ(0)
        let ctx = Context::new(30).unwrap();
        let p = make_params(ctx.int(3), -4, 2, false).unwrap();
        let a = ctx.int(2);
        let h = algebraic_h(&p, &Complex::from_real(a.clone()), &ctx).unwrap();
        let pi = ctx.pi();
        let z4 = pi.powi(4) / 90;
        let z2 = pi.powi(2) / 6;
        let want = (z4 - ctx.int(3) * z2 / a.powi(2) + ctx.int(6) * ctx.ratio(-1, 2) / a.powi(4)) / a.powi(6);
        assert!((&h.re - &want).abs() < ctx.pow10(-40));
    }
}
