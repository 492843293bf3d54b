use super::{Context, Real};
use crate::{Error, Result};

const MAX_EM_TERMS: usize = 160;
const MAX_SHIFT_ATTEMPTS: usize = 6;

/// `ζ(n)` at even integers: `ζ(0) = -½`, `ζ(-2k) = 0`,
/// `ζ(2k) = (2π)^{2k} |B_{2k}| / (2 (2k)!)`.
pub fn zeta_special(n: i64, ctx: &Context) -> Result<Real> {
    if n % 2 != 0 {
        return Err(Error::Domain("zeta_special is defined only at even integers"));
    }
    if n == 0 {
        return Ok(ctx.ratio(-1, 2));
    }
    if n < 0 {
        return Ok(ctx.zero());
    }
    let mut fact = ctx.one();
    for i in 2..=n {
        fact *= ctx.int(i);
    }
    let b = ctx.bernoulli_real(n as usize).abs();
    Ok((ctx.pi() * 2).powi(n) * b / (fact * 2))
}

/// Hurwitz zeta `ζ(s, q) = Σ_{n≥0} (n+q)^{-s}` for real `s > 1`, `q > 0`.
///
/// Sums `L` leading terms directly and applies Euler–Maclaurin at `Q = q + L`.
/// For real `s > 1` the Euler–Maclaurin remainder has the sign of, and is bounded
/// by, the first omitted correction, so the correction series is cut as soon as a
/// term falls below working precision. If the corrections start growing first, `L`
/// is increased and the evaluation retried.
pub fn hurwitz_zeta(s: &Real, q: &Real, ctx: &Context) -> Result<Real> {
    if *s <= ctx.one() {
        return Err(Error::Domain("hurwitz_zeta requires s > 1"));
    }
    if !q.is_positive() {
        return Err(Error::Domain("hurwitz_zeta requires q > 0"));
    }
    let sf = s.to_f64();
    let qf = q.to_f64();
    let mut target = ctx.working_digits() as f64 * 0.5 + sf * 0.25;
    for _ in 0..MAX_SHIFT_ATTEMPTS {
        let shift = if qf < target { libm::ceil(target - qf) as i64 } else { 0 };
        if let Some(v) = euler_maclaurin(s, q, shift, ctx) {
            return Ok(v);
        }
        target *= 2.0;
    }
    Err(Error::NotConverged {
        what: "Euler-Maclaurin for Hurwitz zeta",
        limit: MAX_EM_TERMS,
    })
}

fn euler_maclaurin(s: &Real, q: &Real, shift: i64, ctx: &Context) -> Option<Real> {
    let mut sum = ctx.zero();
    for n in 0..shift {
        sum += ((q + n).ln(ctx) * s).exp(ctx).recip();
    }
    let big_q = q + shift;
    let q_pow = (big_q.ln(ctx) * s).exp(ctx).recip(); // Q^{-s}
    sum += &big_q * &q_pow / (s - 1);
    sum += &q_pow / 2;

    let eps = ctx.epsilon() / 100;
    let q2_inv = (&big_q * &big_q).recip();
    let mut poch = s.clone(); // (s)_{2j-1}
    let mut power = &q_pow / &big_q; // Q^{-s-2j+1}
    let mut fact = ctx.int(2); // (2j)!
    let mut prev: Option<Real> = None;
    for j in 1..=MAX_EM_TERMS as i64 {
        let term = ctx.bernoulli_real(2 * j as usize) / &fact * &poch * &power;
        let mag = term.abs();
        if mag < &eps * sum.abs() {
            return Some(sum + term);
        }
        if prev.as_ref().is_some_and(|p| mag > *p) {
            return None;
        }
        sum += term;
        prev = Some(mag);
        poch = poch * (s + (2 * j - 1)) * (s + 2 * j);
        power *= &q2_inv;
        fact = fact * ((2 * j + 1) * (2 * j + 2));
    }
    None
}
