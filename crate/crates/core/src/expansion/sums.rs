use alloc::vec::Vec;

use crate::numerics::{Complex, Context, Real};
use crate::{Error, Result};

const MAX_N: usize = 200_000;

/// A truncated exponential sum.
#[derive(Debug, Clone)]
pub struct KSum {
    pub value: Complex,
    /// Terms actually summed.
    pub n_terms: usize,
    /// Bound on the neglected tail.
    pub tail_bound: Real,
}

/// Base of the power in the n-th term: `n` for `K_j`, `n - ½` for `K̃_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    Plain,
    Shifted,
}

fn base(kind: SumKind, n: i64, ctx: &Context) -> Real {
    match kind {
        SumKind::Plain => ctx.int(n),
        SumKind::Shifted => ctx.ratio(2 * n - 1, 2),
    }
}

fn power(b: &Real, e: &Real, ctx: &Context) -> Real {
    match e.to_i64().filter(|_| e.is_integer()) {
        Some(k) => b.powi(k),
        None => (b.ln(ctx) * e).exp(ctx),
    }
}

/// Growth ratio bound `e^{-Re X} · ((b+1)/b)^{max(e,0)}` between successive terms.
fn ratio_bound(decay: f64, b: f64, e: f64) -> f64 {
    decay * libm::pow((b + 1.0) / b, e.max(0.0))
}

/// `Σ_{n≥1} e^{-(n-1)X} b_n^{μ-1-j}` for `j = 0..count`, sharing the work across `j`.
///
/// Each sum stops once its next term falls below `tol` times the accumulated
/// magnitude and the geometric tail bound is valid; that next term is not added
/// but goes into the bound.
pub fn k_sums(x: &Complex, mu: &Real, count: usize, kind: SumKind, tol: &Real, ctx: &Context) -> Result<Vec<KSum>> {
    if !x.re.is_positive() {
        return Err(Error::SectorViolation {
            arg_deg: x.arg(ctx).to_f64().to_degrees(),
            limit_deg: 90.0,
        });
    }
    let u = (-x).exp(ctx);
    let decay = libm::exp(-x.re.to_f64());
    let mu_f = mu.to_f64();
    let e0 = mu - 1;

    let mut sums: Vec<Complex> = (0..count).map(|_| Complex::zero(ctx)).collect();
    let mut mags: Vec<Real> = (0..count).map(|_| ctx.zero()).collect();
    let mut done: Vec<Option<(usize, Real)>> = (0..count).map(|_| None).collect();
    let mut remaining = count;
    let mut u_pow = Complex::one(ctx);
    for n in 1..=MAX_N as i64 {
        if remaining == 0 {
            break;
        }
        let b = base(kind, n, ctx);
        let b_inv = b.recip();
        let mut pw = power(&b, &e0, ctx);
        let b_f = b.to_f64();
        for j in 0..count {
            if j > 0 {
                pw *= &b_inv;
            }
            if done[j].is_some() {
                continue;
            }
            let term = u_pow.scale(&pw);
            let mag = term.abs();
            if n > 1 && mag < tol * &mags[j] {
                let rho = ratio_bound(decay, b_f, mu_f - 1.0 - j as f64);
                if rho < 1.0 {
                    let bound = &mag / ctx.from_f64(1.0 - rho);
                    done[j] = Some((n as usize - 1, bound));
                    remaining -= 1;
                    continue;
                }
            }
            mags[j] += &mag;
            sums[j] += term;
        }
        u_pow = &u_pow * &u;
    }
    if remaining > 0 {
        return Err(Error::NotConverged {
            what: "exponential sum K_j",
            limit: MAX_N,
        });
    }
    Ok(sums
        .into_iter()
        .zip(done)
        .map(|(value, d)| {
            let (n_terms, tail_bound) = d.expect("all sums finished");
            KSum {
                value,
                n_terms,
                tail_bound,
            }
        })
        .collect())
}

/// `K_j(X; μ) = Σ_{n≥1} e^{-(n-1)X} / n^{1-μ+j}`, `Re X > 0`.
pub fn k_sum(x: &Complex, mu: &Real, j: usize, tol: &Real, ctx: &Context) -> Result<KSum> {
    let mut all = k_sums(x, mu, j + 1, SumKind::Plain, tol, ctx)?;
    Ok(all.swap_remove(j))
}

/// `K̃_j(X; μ) = Σ_{n≥1} e^{-(n-1)X} / (n-½)^{1-μ+j}`, `Re X > 0`.
pub fn k_tilde_sum(x: &Complex, mu: &Real, j: usize, tol: &Real, ctx: &Context) -> Result<KSum> {
    let mut all = k_sums(x, mu, j + 1, SumKind::Shifted, tol, ctx)?;
    Ok(all.swap_remove(j))
}

/// A truncated real cosine sum.
#[derive(Debug, Clone)]
pub struct RealKSum {
    pub value: Real,
    pub n_terms: usize,
    pub tail_bound: Real,
}

/// `K*_j(X; ω) = Σ_{n≥1} e^{-(n-1)X cos ω} n^{μ-1-j} cos[nX sin ω + (j-ϑ)ω]` for
/// `j = 0..count`.
///
/// Truncation follows [`k_sums`], measured against the sum of term magnitudes
/// since the cosine sum itself may be small.
pub fn k_sums_real(
    x: &Real,
    omega: &Real,
    mu: &Real,
    theta: &Real,
    count: usize,
    tol: &Real,
    ctx: &Context,
) -> Result<Vec<RealKSum>> {
    let x_cos = x * omega.cos(ctx);
    if !x.is_positive() || !x_cos.is_positive() {
        return Err(Error::Domain("real exponential sums need X > 0 and |omega| < pi/2"));
    }
    let x_sin = x * omega.sin(ctx);
    let u = (-&x_cos).exp(ctx);
    let decay = libm::exp(-x_cos.to_f64());
    let mu_f = mu.to_f64();
    let e0 = mu - 1;
    let phases: Vec<Real> = (0..count as i64).map(|j| (ctx.int(j) - theta) * omega).collect();

    let mut sums: Vec<Real> = (0..count).map(|_| ctx.zero()).collect();
    let mut mags: Vec<Real> = (0..count).map(|_| ctx.zero()).collect();
    let mut done: Vec<Option<(usize, Real)>> = (0..count).map(|_| None).collect();
    let mut remaining = count;
    let mut u_pow = ctx.one();
    for n in 1..=MAX_N as i64 {
        if remaining == 0 {
            break;
        }
        let nr = ctx.int(n);
        let n_inv = nr.recip();
        let mut pw = power(&nr, &e0, ctx);
        let angle = &x_sin * n;
        for j in 0..count {
            if j > 0 {
                pw *= &n_inv;
            }
            if done[j].is_some() {
                continue;
            }
            let envelope = &u_pow * &pw;
            if n > 1 && envelope < tol * &mags[j] {
                let rho = ratio_bound(decay, n as f64, mu_f - 1.0 - j as f64);
                if rho < 1.0 {
                    let bound = envelope / ctx.from_f64(1.0 - rho);
                    done[j] = Some((n as usize - 1, bound));
                    remaining -= 1;
                    continue;
                }
            }
            let term = &envelope * (&angle + &phases[j]).cos(ctx);
            mags[j] += &envelope;
            sums[j] += term;
        }
        u_pow *= &u;
    }
    if remaining > 0 {
        return Err(Error::NotConverged {
            what: "exponential sum K*_j",
            limit: MAX_N,
        });
    }
    Ok(sums
        .into_iter()
        .zip(done)
        .map(|(value, d)| {
            let (n_terms, tail_bound) = d.expect("all sums finished");
            RealKSum {
                value,
                n_terms,
                tail_bound,
            }
        })
        .collect())
}

/// Single `K*_j(X; ω)`.
pub fn k_sum_real(
    x: &Real,
    omega: &Real,
    mu: &Real,
    gamma: i64,
    j: usize,
    tol: &Real,
    ctx: &Context,
) -> Result<RealKSum> {
    let theta = mu + gamma;
    let mut all = k_sums_real(x, omega, mu, &theta, j + 1, tol, ctx)?;
    Ok(all.swap_remove(j))
}
