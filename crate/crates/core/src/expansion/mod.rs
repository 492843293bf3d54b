//! Large-`a` expansions.
//!
//! ```text
//! S(a) = Γ((γ+1)/λ)Γ(μ-(γ+1)/λ) / (λΓ(μ) a^{δ-1}) + H(a) + (-1)^m/Γ(μ) (π/p)^μ a^{μ-δ} Σ_r E_r(a)
//! E_r(a) = e^{-X_r + iϑω_r} Σ_{j<M} (-1)^j c_j X_r^{-j} K_j(X_r; μ)
//! ```
//!
//! [`expansion_complex`] evaluates this directly, [`expansion_real`] uses the
//! real cosine form for `a > 0`, [`closed_form_integer_mu`] and [`coth_sum_mu1`]
//! are the exact terminating cases, and [`expansion_alternating`] handles
//! `Σ (-1)^{n-1} n^γ / (n^λ + a^λ)^μ`.

mod algebraic;
mod deriv;
mod sums;

use alloc::vec::Vec;

pub use algebraic::{algebraic_h, exponential_prefactor, gamma_term, h_alternating, kstar};
pub use deriv::DerivPoly;
pub use sums::{k_sum, k_sum_real, k_sums, k_sums_real, k_tilde_sum, KSum, RealKSum, SumKind};

pub use crate::model::omega;

use crate::coeffs::{cj_generic, cj_integer_mu, CoeffContext, CoeffMethod, CoeffTable};
use crate::model::{EvalPoint, MathieuParams};
use crate::numerics::{Complex, Context, Real};
use crate::{Error, Result};

/// Smallest `min_r Re X_r` for which the expansions are attempted.
pub const REGIME_THRESHOLD: f64 = 2.0;
const AUTO_CAP_MIN: usize = 20;
const AUTO_CAP_MAX: usize = 200;

/// How many terms of each exponential expansion to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Optimal truncation on the slowest-decaying ray.
    Auto,
    /// Terms `j = 0..M`.
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionKind {
    Complex,
    Real,
    ClosedForm,
    Alternating,
}

impl ExpansionKind {
    pub fn name(self) -> &'static str {
        match self {
            ExpansionKind::Complex => "asymptotic-complex",
            ExpansionKind::Real => "asymptotic-real",
            ExpansionKind::ClosedForm => "closed-form",
            ExpansionKind::Alternating => "asymptotic-alternating",
        }
    }
}

/// One exponentially small contribution.
#[derive(Debug, Clone)]
pub struct ExponentialPart {
    pub r: usize,
    pub omega: Real,
    pub x_r: Complex,
    /// Multiplier applied when summing over `r` (½ for the middle real term of odd `p`).
    pub weight: Real,
    /// Factor in front of the `j`-sum, e.g. `e^{-X_r + iϑω_r}`.
    pub scale: Complex,
    /// `(-1)^j c_j X_r^{-j} K_j` for `j < M`.
    pub terms: Vec<Complex>,
    /// Terms used in each `n`-sum.
    pub n_terms: Vec<usize>,
    /// `scale · Σ_j terms_j`.
    pub partial_sum: Complex,
}

/// Breakdown of an expansion evaluation.
#[derive(Debug, Clone)]
pub struct ExpansionReport {
    pub kind: ExpansionKind,
    pub total: Complex,
    pub gamma_term: Complex,
    pub algebraic: Complex,
    pub prefactor: Complex,
    pub exponential: Vec<ExponentialPart>,
    pub m_used: usize,
    pub coeff_method: CoeffMethod,
    /// Largest of the next `p + 1` omitted terms plus sum-truncation and rounding allowances.
    pub remainder_estimate: Real,
    /// Auto mode ran out of coefficients before the terms started growing.
    pub table_exhausted: bool,
}

impl ExpansionReport {
    /// `prefactor · Σ_r weight_r E_r`, i.e. `total - gamma_term - algebraic`.
    pub fn exponential_total(&self, ctx: &Context) -> Complex {
        let mut sum = Complex::zero(ctx);
        for part in &self.exponential {
            sum += part.partial_sum.scale(&part.weight);
        }
        &self.prefactor * &sum
    }
}

/// Result of [`optimal_truncation`].
#[derive(Debug, Clone)]
pub struct OptimalTruncation {
    /// Number of terms kept; the omitted terms `m..m+p` have the smallest envelope.
    pub m: usize,
    /// No minimum was found within the coefficient cap.
    pub exhausted: bool,
    /// `|c_j X_r^{-j} K_j|` on the slowest-decaying ray.
    pub term_magnitudes: Vec<Real>,
}

struct Plan {
    table: CoeffTable,
    m: usize,
    exhausted: bool,
}

/// Coefficient cap used by auto truncation: `clamp(⌈3π|a|⌉ + 10, 20, 200)`.
pub fn auto_coefficient_cap(a: &Complex) -> usize {
    let raw = libm::ceil(3.0 * core::f64::consts::PI * a.abs().to_f64()) as usize + 10;
    raw.clamp(AUTO_CAP_MIN, AUTO_CAP_MAX)
}

fn check_regime(point: &EvalPoint) -> Result<()> {
    let re = point.min_re_x().1.to_f64();
    if re < REGIME_THRESHOLD {
        return Err(Error::RegimeNotReached { re_x: re });
    }
    Ok(())
}

fn sum_kind(params: &MathieuParams) -> SumKind {
    if params.alternating {
        SumKind::Shifted
    } else {
        SumKind::Plain
    }
}

fn integer_table(params: &MathieuParams, ctx: &Context) -> Option<Result<CoeffTable>> {
    params
        .mu_integer
        .map(|q| cj_integer_mu(q, params.gamma, params.lambda, ctx))
}

fn generic_table(params: &MathieuParams, order: usize, ctx: &Context) -> Result<CoeffTable> {
    cj_generic(&CoeffContext::new(params, order)?, ctx)
}

fn term_magnitudes(
    params: &MathieuParams,
    x: &Complex,
    table: &CoeffTable,
    tol: &Real,
    ctx: &Context,
) -> Result<Vec<Real>> {
    let ks = k_sums(x, &params.mu, table.len(), sum_kind(params), tol, ctx)?;
    let x_inv = x.abs().recip();
    let mut pow = ctx.one();
    let mut out = Vec::with_capacity(table.len());
    for (c, k) in table.values.iter().zip(&ks) {
        out.push(c.abs() * &pow * k.value.abs());
        pow *= &x_inv;
    }
    Ok(out)
}

/// Width of the window over which term magnitudes are compared. With `p` rays the
/// magnitudes can dip every few indices, so a single small term says little about
/// the size of the tail.
fn envelope_width(params: &MathieuParams) -> usize {
    params.p as usize + 1
}

/// Index `j ≥ 1` minimising `max(t_j, …, t_{j+w-1})`, so isolated dips (coefficients
/// that happen to be close to zero) are not mistaken for the least term. `None`
/// when the envelope is still falling at the end of `mags`.
fn least_term(mags: &[Real], w: usize) -> Option<usize> {
    if mags.len() < w + 2 {
        return None;
    }
    let last = mags.len() - w;
    let mut best: Option<(usize, &Real)> = None;
    for j in 1..=last {
        let env = mags[j..j + w].iter().fold(&mags[j], |m, t| if t > m { t } else { m });
        if best.is_none_or(|(_, b)| env < b) {
            best = Some((j, env));
        }
    }
    best.map(|(j, _)| j).filter(|&j| j < last)
}

fn auto_plan(params: &MathieuParams, point: &EvalPoint, tol: &Real, ctx: &Context) -> Result<(Plan, Vec<Real>)> {
    if let Some(table) = integer_table(params, ctx) {
        let table = table?;
        let m = table.len();
        return Ok((
            Plan {
                table,
                m,
                exhausted: false,
            },
            Vec::new(),
        ));
    }
    let cap = auto_coefficient_cap(&point.a);
    let w = envelope_width(params);
    let table = generic_table(params, cap + w, ctx)?;
    let (worst, _) = point.min_re_x();
    let mags = term_magnitudes(params, &point.x_r[worst], &table, tol, ctx)?;
    let (m, exhausted) = match least_term(&mags, w) {
        Some(j) => (j, false),
        _ => (cap, true),
    };
    Ok((Plan { table, m, exhausted }, mags))
}

fn plan(params: &MathieuParams, point: &EvalPoint, trunc: Truncation, ctx: &Context) -> Result<Plan> {
    match trunc {
        Truncation::Auto => Ok(auto_plan(params, point, &ctx.sum_tolerance(), ctx)?.0),
        Truncation::Fixed(0) => Err(Error::Domain("truncation order must be at least 1")),
        Truncation::Fixed(m) => {
            let table = match integer_table(params, ctx) {
                Some(t) => t?,
                None => generic_table(params, m + envelope_width(params), ctx)?,
            };
            Ok(Plan {
                table,
                m,
                exhausted: false,
            })
        }
    }
}

/// `M*` for auto truncation: the number of terms preceding the least term of the
/// expansion on the ray with the smallest `Re X_r`. "Least" is judged on the
/// running maximum over `p + 1` consecutive magnitudes. Integer μ gives `M* = q`.
pub fn optimal_truncation(params: &MathieuParams, a: &Complex, ctx: &Context) -> Result<OptimalTruncation> {
    optimal_truncation_with_tol(params, a, &ctx.sum_tolerance(), ctx)
}

/// [`optimal_truncation`] with an explicit relative tolerance for the `n`-sums.
pub fn optimal_truncation_with_tol(
    params: &MathieuParams,
    a: &Complex,
    tol: &Real,
    ctx: &Context,
) -> Result<OptimalTruncation> {
    let point = EvalPoint::new(params, a.clone(), ctx)?;
    check_regime(&point)?;
    let (plan, term_magnitudes) = auto_plan(params, &point, tol, ctx)?;
    Ok(OptimalTruncation {
        m: plan.m,
        exhausted: plan.exhausted,
        term_magnitudes,
    })
}

/// Coefficients `c_M, …, c_{M+w-1}` that are available, for the remainder estimate.
fn omitted_coefficients(params: &MathieuParams, plan: &Plan) -> Vec<Real> {
    if plan.exhausted {
        return Vec::new();
    }
    (plan.m..plan.m + envelope_width(params))
        .map_while(|j| plan.table.get(j))
        .collect()
}

/// `max_j |c_j| |X|^{-j} |K_j|` over the omitted window starting at `m`.
fn largest_omitted(cs: &[Real], x_abs_inv: &Real, m: usize, ks: &[KSum], ctx: &Context) -> Real {
    let mut pow = x_abs_inv.powi(m as i64);
    let mut best = ctx.zero();
    for (i, c) in cs.iter().enumerate() {
        let t = c.abs() * &pow * ks[m + i].value.abs();
        if t > best {
            best = t;
        }
        pow *= x_abs_inv;
    }
    best
}

/// Per-ray evaluation shared by the complex-ray and alternating forms.
struct RayResult {
    part: ExponentialPart,
    /// Omitted-term and tail allowance, before the prefactor.
    remainder: Real,
}

fn complex_ray(params: &MathieuParams, point: &EvalPoint, r: usize, plan: &Plan, ctx: &Context) -> Result<RayResult> {
    let x = &point.x_r[r];
    let w = &point.omegas[r];
    let kind = sum_kind(params);
    let omitted_c = omitted_coefficients(params, plan);
    let count = plan.m + omitted_c.len();
    let ks = k_sums(x, &params.mu, count, kind, &ctx.sum_tolerance(), ctx)?;

    let exp_arg = match kind {
        SumKind::Plain => -x.clone(),
        SumKind::Shifted => -x.scale(&ctx.ratio(1, 2)),
    };
    let scale = Complex::new(exp_arg.re, exp_arg.im + &params.theta * w).exp(ctx);

    let x_inv = x.recip();
    let x_abs_inv = x.abs().recip();
    let mut x_pow = Complex::one(ctx);
    let mut abs_pow = ctx.one();
    let mut terms = Vec::with_capacity(plan.m);
    let mut sum = Complex::zero(ctx);
    let mut tails = ctx.zero();
    for (j, k) in ks.iter().enumerate().take(plan.m) {
        let c = plan
            .table
            .get(j)
            .ok_or(Error::Consistency("coefficient table too short"))?;
        let signed = if j % 2 == 1 { -c.clone() } else { c.clone() };
        let t = (&x_pow * &k.value).scale(&signed);
        tails += c.abs() * &abs_pow * &k.tail_bound;
        sum += &t;
        terms.push(t);
        x_pow = &x_pow * &x_inv;
        abs_pow *= &x_abs_inv;
    }
    let omitted = if plan.exhausted {
        terms.last().map(Complex::abs).unwrap_or_else(|| ctx.zero())
    } else {
        largest_omitted(&omitted_c, &x_abs_inv, plan.m, &ks, ctx)
    };
    let remainder = scale.abs() * (omitted + tails);
    let partial_sum = &scale * &sum;
    Ok(RayResult {
        part: ExponentialPart {
            r,
            omega: w.clone(),
            x_r: x.clone(),
            weight: ctx.one(),
            scale,
            terms,
            n_terms: ks.iter().take(plan.m).map(|k| k.n_terms).collect(),
            partial_sum,
        },
        remainder,
    })
}

/// `10^{-(working digits - 3)}` times the magnitude of everything that was summed.
fn rounding_floor(parts: &[&Complex], exp_mag: &Real, ctx: &Context) -> Real {
    let mut mag = exp_mag.clone();
    for p in parts {
        mag += p.abs();
    }
    mag * ctx.pow10(-(ctx.working_digits() as i64 - 3))
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    kind: ExpansionKind,
    gamma_term: Complex,
    algebraic: Complex,
    prefactor: Complex,
    exponential: Vec<ExponentialPart>,
    remainder_raw: Real,
    plan: &Plan,
    ctx: &Context,
) -> ExpansionReport {
    let mut sum = Complex::zero(ctx);
    let mut exp_mag = ctx.zero();
    for part in &exponential {
        let weighted = part.partial_sum.scale(&part.weight);
        exp_mag += weighted.abs();
        sum += weighted;
    }
    let pref_abs = prefactor.abs();
    let exp_total = &prefactor * &sum;
    let total = &gamma_term + &algebraic + &exp_total;
    let floor = rounding_floor(&[&gamma_term, &algebraic], &(&exp_mag * &pref_abs), ctx);
    ExpansionReport {
        kind,
        total,
        gamma_term,
        algebraic,
        prefactor,
        exponential,
        m_used: plan.m,
        coeff_method: plan.table.method,
        remainder_estimate: pref_abs * remainder_raw + floor,
        table_exhausted: plan.exhausted,
    }
}

/// Complex-form expansion of `S(a)` for `|arg a| < π/λ`.
pub fn expansion_complex(
    params: &MathieuParams,
    a: &Complex,
    trunc: Truncation,
    ctx: &Context,
) -> Result<ExpansionReport> {
    let params = &params.with_alternating(false);
    let point = EvalPoint::new(params, a.clone(), ctx)?;
    check_regime(&point)?;
    let plan = plan(params, &point, trunc, ctx)?;
    let mut parts = Vec::with_capacity(point.x_r.len());
    let mut remainder = ctx.zero();
    for r in 0..point.x_r.len() {
        let ray = complex_ray(params, &point, r, &plan, ctx)?;
        remainder += ray.remainder;
        parts.push(ray.part);
    }
    Ok(assemble(
        ExpansionKind::Complex,
        gamma_term(params, a, ctx)?,
        algebraic_h(params, a, ctx)?,
        exponential_prefactor(params, a, ctx)?,
        parts,
        remainder,
        &plan,
        ctx,
    ))
}

/// Real cosine-form expansion for `a > 0`: rays are paired as
/// `E_r + E_{p-1-r} = E*_r`, and for odd `p` the middle ray (`ω = 0`) enters as `½E*_N`.
pub fn expansion_real(params: &MathieuParams, a: &Real, trunc: Truncation, ctx: &Context) -> Result<ExpansionReport> {
    if !a.is_positive() {
        return Err(Error::Domain("the real-form expansion needs a > 0"));
    }
    let params = &params.with_alternating(false);
    let a_c = Complex::from_real(a.clone());
    let point = EvalPoint::new(params, a_c.clone(), ctx)?;
    check_regime(&point)?;
    let plan = plan(params, &point, trunc, ctx)?;
    let x = &point.x.re;
    let p = params.p as usize;
    let n_half = p / 2;
    let tol = ctx.sum_tolerance();
    let omitted_c = omitted_coefficients(params, &plan);

    let mut parts = Vec::new();
    let mut remainder = ctx.zero();
    let x_inv = x.recip();
    let rays: Vec<(usize, Real)> = (0..n_half)
        .map(|r| (r, ctx.one()))
        .chain((p % 2 == 1).then(|| (n_half, ctx.ratio(1, 2))))
        .collect();
    for (r, weight) in rays {
        let w = &point.omegas[r];
        let ks = k_sums_real(x, w, &params.mu, &params.theta, plan.m, &tol, ctx)?;
        let scale = (-(x * w.cos(ctx))).exp(ctx) * 2;
        let mut x_pow = ctx.one();
        let mut terms = Vec::with_capacity(plan.m);
        let mut sum = ctx.zero();
        let mut tails = ctx.zero();
        for (j, k) in ks.iter().enumerate() {
            let c = plan
                .table
                .get(j)
                .ok_or(Error::Consistency("coefficient table too short"))?;
            let t = &c * &x_pow * &k.value;
            let t = if j % 2 == 1 { -t } else { t };
            tails += c.abs() * &x_pow * &k.tail_bound;
            sum += &t;
            terms.push(Complex::from_real(t));
            x_pow *= &x_inv;
        }
        // Omitted terms, measured on the complex rays this real ray stands for.
        let omitted = if plan.exhausted {
            terms.last().map(Complex::abs).unwrap_or_else(|| ctx.zero()) * &scale
        } else {
            let xr = &point.x_r[r];
            let ks = k_sums(xr, &params.mu, plan.m + omitted_c.len(), SumKind::Plain, &tol, ctx)?;
            largest_omitted(&omitted_c, &xr.abs().recip(), plan.m, &ks, ctx) * (-&xr.re).exp(ctx) * 2
        };
        remainder += (omitted + &scale * tails) * &weight;
        parts.push(ExponentialPart {
            r,
            omega: w.clone(),
            x_r: point.x_r[r].clone(),
            weight,
            scale: Complex::from_real(scale.clone()),
            terms,
            n_terms: ks.iter().map(|k| k.n_terms).collect(),
            partial_sum: Complex::from_real(scale * sum),
        });
    }
    Ok(assemble(
        ExpansionKind::Real,
        gamma_term(params, &a_c, ctx)?,
        algebraic_h(params, &a_c, ctx)?,
        exponential_prefactor(params, &a_c, ctx)?,
        parts,
        remainder,
        &plan,
        ctx,
    ))
}

/// Exact evaluation for integer `μ = q`: the expansions terminate after `q` terms
/// and each `K_j` is `(-1)^k e^{X_r} D^k (e^{X_r}-1)^{-1}` with `k = q-1-j`.
pub fn closed_form_integer_mu(params: &MathieuParams, a: &Complex, ctx: &Context) -> Result<ExpansionReport> {
    let q = params.mu_integer.ok_or(Error::NonIntegerMu)?;
    let table = cj_integer_mu(q, params.gamma, params.lambda, ctx)?;
    closed_form_with_table(params, a, table, ctx)
}

/// [`closed_form_integer_mu`] with caller-supplied `c_0, …, c_{q-1}`, for probing how
/// sensitive the closed form is to an individual coefficient.
pub fn closed_form_with_table(
    params: &MathieuParams,
    a: &Complex,
    table: CoeffTable,
    ctx: &Context,
) -> Result<ExpansionReport> {
    let q = params.mu_integer.ok_or(Error::NonIntegerMu)? as usize;
    if table.len() != q {
        return Err(Error::Domain("closed form needs exactly q coefficients"));
    }
    let params = &params.with_alternating(false);
    let point = EvalPoint::new(params, a.clone(), ctx)?;
    let deriv = DerivPoly::new(q - 1);
    let one = Complex::one(ctx);
    let mut parts = Vec::with_capacity(point.x_r.len());
    for (r, x) in point.x_r.iter().enumerate() {
        let w = &point.omegas[r];
        let u = (-x).exp(ctx);
        let f = &u / &(&one - &u);
        let e_x = u.recip();
        let x_inv = x.recip();
        let mut x_pow = Complex::one(ctx);
        let mut terms = Vec::with_capacity(q);
        let mut sum = Complex::zero(ctx);
        for j in 0..q {
            let k = q - 1 - j;
            let dk = deriv.eval(k, &f, ctx);
            let kj = &e_x * &dk;
            let kj = if k % 2 == 1 { -kj } else { kj };
            let c = &table.values[j];
            let signed = if j % 2 == 1 { -c.clone() } else { c.clone() };
            let t = (&x_pow * &kj).scale(&signed);
            sum += &t;
            terms.push(t);
            x_pow = &x_pow * &x_inv;
        }
        let scale = Complex::new(-&x.re, -&x.im + &params.theta * w).exp(ctx);
        parts.push(ExponentialPart {
            r,
            omega: w.clone(),
            x_r: x.clone(),
            weight: ctx.one(),
            partial_sum: &scale * &sum,
            scale,
            terms,
            n_terms: alloc::vec![0; q],
        });
    }
    let plan = Plan {
        table,
        m: q,
        exhausted: false,
    };
    Ok(assemble(
        ExpansionKind::ClosedForm,
        gamma_term(params, a, ctx)?,
        algebraic_h(params, a, ctx)?,
        exponential_prefactor(params, a, ctx)?,
        parts,
        ctx.zero(),
        &plan,
        ctx,
    ))
}

/// `μ = 1`: `S = H + ((-1)^m π / (2p a^{δ-1})) Σ_r e^{iϑω_r} coth(πa e^{iω_r})`.
pub fn coth_sum_mu1(params: &MathieuParams, a: &Complex, ctx: &Context) -> Result<Complex> {
    if params.mu_integer != Some(1) {
        return Err(Error::Domain("the coth form needs mu = 1"));
    }
    let point = EvalPoint::new(params, a.clone(), ctx)?;
    let pi = ctx.pi();
    let pi_a = a.scale(&pi);
    let mut sum = Complex::zero(ctx);
    for w in &point.omegas {
        let rot = Complex::cis(w, ctx);
        let phase = Complex::cis(&(&params.theta * w), ctx);
        sum += &phase * &(&pi_a * &rot).coth(ctx);
    }
    let delta_m1 = params.lambda - params.gamma - 1;
    let mut coef = pi / (2 * params.p);
    if params.m.rem_euclid(2) == 1 {
        coef = -coef;
    }
    let lead = a.powi(-delta_m1).scale(&coef);
    Ok(algebraic_h(params, a, ctx)? + &lead * &sum)
}

/// Alternating series `Σ (-1)^{n-1} n^γ/(n^λ+a^λ)^μ`: `H̃` plus the expansions
/// with `e^{-X_r/2}` scale, shifted sums `K̃_j` and prefactor sign `(-1)^{m-1}`.
pub fn expansion_alternating(
    params: &MathieuParams,
    a: &Complex,
    trunc: Truncation,
    ctx: &Context,
) -> Result<ExpansionReport> {
    let params = &params.with_alternating(true);
    let point = EvalPoint::new(params, a.clone(), ctx)?;
    check_regime(&point)?;
    let plan = plan(params, &point, trunc, ctx)?;
    let mut parts = Vec::with_capacity(point.x_r.len());
    let mut remainder = ctx.zero();
    for r in 0..point.x_r.len() {
        let ray = complex_ray(params, &point, r, &plan, ctx)?;
        remainder += ray.remainder;
        parts.push(ray.part);
    }
    Ok(assemble(
        ExpansionKind::Alternating,
        Complex::zero(ctx),
        h_alternating(params, a, ctx)?,
        -exponential_prefactor(params, a, ctx)?,
        parts,
        remainder,
        &plan,
        ctx,
    ))
}

/// Dispatches on the alternating flag of `params`.
pub fn expand(params: &MathieuParams, a: &Complex, trunc: Truncation, ctx: &Context) -> Result<ExpansionReport> {
    if params.alternating {
        expansion_alternating(params, a, trunc, ctx)
    } else {
        expansion_complex(params, a, trunc, ctx)
    }
}
