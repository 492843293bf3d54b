//! Coefficients `c_j` of the inverse factorial expansion
//!
//! ```text
//! λ^{μ-1} Γ(s+γ+1) Γ(μ+s/λ) / (Γ(1+s/λ) Γ(s+ϑ)) ~ Σ_j c_j / (1-s-ϑ)_j      (s → ∞)
//! ```
//!
//! [`cj_generic`] works for any parameters by matching power series in `ξ = 1/s`.
//! [`cj_closed_lambda2_gamma0`], [`cj_integer_mu`] and [`cj_low_order`] are
//! special-case routes used to cross-check it, and [`ratio_oracle`] measures how
//! well a table reproduces the left-hand side at a finite `s`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::model::MathieuParams;
use crate::numerics::{ln_gamma, stirling_coefficients, Context, Real, Series};
use crate::{Error, Result};

/// Default number of coefficients.
pub const DEFAULT_ORDER: usize = 16;

/// Parameters of a coefficient computation.
#[derive(Debug, Clone)]
pub struct CoeffContext {
    pub mu: Real,
    pub gamma: i64,
    pub lambda: i64,
    /// `ϑ = μ + γ`.
    pub theta: Real,
    /// Number of coefficients `M`.
    pub order: usize,
}

impl CoeffContext {
    pub fn new(params: &MathieuParams, order: usize) -> Result<Self> {
        Self::from_parts(params.mu.clone(), params.gamma, params.lambda, order)
    }

    /// Builds a context without the convergence checks of [`MathieuParams`];
    /// the coefficients are defined for any `μ`, `γ` and `λ > 0`.
    pub fn from_parts(mu: Real, gamma: i64, lambda: i64, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("coefficient order must be at least 1"));
        }
        if lambda <= 0 {
            return Err(Error::Domain("lambda must be positive"));
        }
        let theta = &mu + gamma;
        Ok(CoeffContext {
            mu,
            gamma,
            lambda,
            theta,
            order,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffMethod {
    GenericMatching,
    ClosedLambda2,
    IntegerMu,
    LowOrderFormula,
}

impl CoeffMethod {
    pub fn name(self) -> &'static str {
        match self {
            CoeffMethod::GenericMatching => "generic-matching",
            CoeffMethod::ClosedLambda2 => "closed-lambda2",
            CoeffMethod::IntegerMu => "integer-mu",
            CoeffMethod::LowOrderFormula => "low-order-formula",
        }
    }
}

/// `c_0, …, c_{M-1}` together with how they were obtained.
#[derive(Debug, Clone)]
pub struct CoeffTable {
    pub mu: Real,
    pub gamma: i64,
    pub lambda: i64,
    pub values: Vec<Real>,
    /// Exact values when the route is exact (integer μ).
    pub exact: Option<Vec<BigInt>>,
    pub method: CoeffMethod,
}

impl CoeffTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether every coefficient beyond the table is known to vanish.
    pub fn terminates(&self) -> bool {
        self.method == CoeffMethod::IntegerMu
    }

    /// `c_j`, zero past the end of a terminating table, `None` past the end otherwise.
    pub fn get(&self, j: usize) -> Option<Real> {
        match self.values.get(j) {
            Some(v) => Some(v.clone()),
            None if self.terminates() => Some(self.values[0].zero_like()),
            None => None,
        }
    }
}

/// Coefficient of `ξ^n`, `n ≥ 1`, in `ln e(βs; c)` where
/// `e(βs; c) = exp[(βs + c - ½) ln(1 + c/(βs)) - c]`.
fn ln_e_series(beta_inv: i64, c: &Real, order: usize, ctx: &Context) -> Series {
    let mut out = vec![ctx.zero(); order];
    let cb = c * beta_inv;
    let c_half = c - ctx.ratio(1, 2);
    let mut pow = ctx.one();
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        pow *= &cb;
        let n = n as i64;
        let bracket = &c_half / n - c / (n + 1);
        let v = &pow * bracket;
        *slot = if n % 2 == 1 { v } else { -v };
    }
    Series::from_coeffs(out)
}

/// `Γ*(βs + c)` as a series in `ξ`, from `Γ*(z) ~ Σ g_k z^{-k}` and
/// `z^{-k} = β^{-k} ξ^k (1 + (c/β) ξ)^{-k}`.
fn gamma_star_series(beta_inv: i64, c: &Real, g: &[Real], ctx: &Context) -> Series {
    let order = g.len();
    let mut out = vec![ctx.zero(); order];
    out[0] = ctx.one();
    // (β^{-1})^k and (-c/β)^i
    let mut binv = Vec::with_capacity(order);
    let mut neg_cb = Vec::with_capacity(order);
    let step = -(c * beta_inv);
    binv.push(ctx.one());
    neg_cb.push(ctx.one());
    for i in 1..order {
        binv.push(&binv[i - 1] * beta_inv);
        neg_cb.push(&neg_cb[i - 1] * &step);
    }
    // Pascal row n-1, starting from row 0
    let mut row = vec![ctx.one()];
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        let mut acc = ctx.zero();
        for k in 1..=n {
            acc += &g[k] * &binv[k] * &row[n - k] * &neg_cb[n - k];
        }
        *slot = acc;
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(ctx.one());
        for i in 1..row.len() {
            next.push(&row[i - 1] + &row[i]);
        }
        next.push(ctx.one());
        row = next;
    }
    Series::from_coeffs(out)
}

/// Extra digits used by [`cj_generic`] to absorb cancellation in the matching.
fn generic_extra_digits(order: usize) -> u32 {
    order as u32 + 20
}

/// All `M` coefficients by series matching in `ξ = 1/s`.
///
/// `R(s)Υ(s)` is expanded from the four `e(·;·)` factors and the four scaled gamma
/// functions, each basis function `1/(1-s-ϑ)_j` is expanded, and the triangular
/// system is solved by forward substitution.
pub fn cj_generic(cc: &CoeffContext, ctx: &Context) -> Result<CoeffTable> {
    let order = cc.order;
    let hi = ctx.elevated(generic_extra_digits(order));
    let lam = cc.lambda;
    let gp1 = hi.int(cc.gamma + 1);
    let one = hi.one();
    let mu = cc.mu.with_precision(hi.bits());
    let theta = cc.theta.with_precision(hi.bits());

    let ln_r = ln_e_series(1, &gp1, order, &hi)
        .add(&ln_e_series(lam, &mu, order, &hi))?
        .sub(&ln_e_series(lam, &one, order, &hi))?
        .sub(&ln_e_series(1, &theta, order, &hi))?;
    let r = ln_r.exp(&hi);

    let g: Vec<Real> = stirling_coefficients(order, &hi)
        .into_iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 1 { -v } else { v })
        .collect();
    let num = gamma_star_series(1, &gp1, &g, &hi).mul(&gamma_star_series(lam, &mu, &g, &hi))?;
    let den = gamma_star_series(lam, &one, &g, &hi).mul(&gamma_star_series(1, &theta, &g, &hi))?;
    let upsilon = num.div(&den)?;
    let target = r.mul(&upsilon)?;

    let mut residual = target.into_coeffs();
    let mut basis = vec![hi.zero(); order];
    basis[0] = hi.one();
    let mut values = Vec::with_capacity(order);
    for n in 0..order {
        // basis b_n has leading term (-1)^n ξ^n
        let c = if n % 2 == 1 {
            -residual[n].clone()
        } else {
            residual[n].clone()
        };
        for i in n..order {
            residual[i] -= &c * &basis[i];
        }
        values.push(c.with_precision(ctx.bits()));
        if n + 1 < order {
            // b_{n+1} = b_n · (-ξ) / (1 + (ϑ - n - 1)ξ)
            let t = &theta - (n as i64 + 1);
            let mut next = vec![hi.zero(); order];
            for i in (n + 1)..order {
                next[i] = -basis[i - 1].clone() - &t * &next[i - 1];
            }
            basis = next;
        }
    }
    Ok(CoeffTable {
        mu: cc.mu.clone(),
        gamma: cc.gamma,
        lambda: cc.lambda,
        values,
        exact: None,
        method: CoeffMethod::GenericMatching,
    })
}

/// Closed-form `c_1, c_2, c_3` as polynomials in `μ, γ, λ`.
pub fn cj_low_order(cc: &CoeffContext, ctx: &Context) -> (Real, Real, Real) {
    let mu = &cc.mu;
    let g = ctx.int(cc.gamma);
    let l = ctx.int(cc.lambda);
    let l1 = &l - 1;
    let m1 = mu - 1;
    let m2 = mu - 2;
    let m3 = mu - 3;
    let l1mu = &l1 * mu;

    let c1 = &m1 * (&g * 2 - &l1mu) / 2;

    let inner2 = &g * (&g - &l1mu - 1) * 12 + &l1mu * (ctx.int(5) - mu * 3 + &l * (mu * 3 - 1));
    let c2 = &m1 * &m2 * inner2 / 24;

    let first = ctx.int(2) - &g * 2 + &l1mu;
    let second = &g * (&g - &l1mu - 2) * 4 + &l1mu * (ctx.int(3) + &l * (mu - 1) - mu);
    let c3 = -(&m1 * &m2 * &m3 * first * second) / 48;
    (c1, c2, c3)
}

/// `c_j = ((-2)^{-j} / j!) Π_{r=1}^{j} (μ - r)(μ + r - 1)`, valid for `λ = 2`, `γ = 0`.
pub fn cj_closed_lambda2_gamma0(mu: &Real, order: usize, ctx: &Context) -> CoeffTable {
    let mut values = Vec::with_capacity(order);
    let mut c = ctx.one();
    for j in 0..order as i64 {
        if j > 0 {
            c = c * (mu - j) * (mu + (j - 1)) / (-2 * j);
        }
        values.push(c.clone());
    }
    CoeffTable {
        mu: mu.clone(),
        gamma: 0,
        lambda: 2,
        values,
        exact: None,
        method: CoeffMethod::ClosedLambda2,
    }
}

/// Exact coefficients for `μ = q`, from
/// `Π_{i=1}^{q-1} (s + iλ) = Σ_{j<q} (-1)^j c_j (s+γ+1)_{q-1-j}`.
pub fn cj_integer_mu(q: u32, gamma: i64, lambda: i64, ctx: &Context) -> Result<CoeffTable> {
    if q == 0 {
        return Err(Error::NonIntegerMu);
    }
    let q = q as usize;
    // Work in t = s + γ + 1; polynomials are coefficient vectors, lowest degree first.
    let mut lhs = vec![BigInt::one()];
    for i in 1..q as i64 {
        lhs = mul_linear(&lhs, &BigInt::from(i * lambda - gamma - 1));
    }
    let mut exact = Vec::with_capacity(q);
    for j in 0..q {
        let k = q - 1 - j;
        let lead = lhs[k].clone();
        let c = if j % 2 == 1 { -lead.clone() } else { lead.clone() };
        let rising = rising_factorial_poly(k);
        for (i, r) in rising.iter().enumerate() {
            lhs[i] -= &lead * r;
        }
        exact.push(c);
    }
    debug_assert!(lhs.iter().all(Zero::is_zero));
    Ok(CoeffTable {
        mu: ctx.int(q as i64),
        gamma,
        lambda,
        values: exact.iter().map(|v| ctx.from_bigint(v)).collect(),
        exact: Some(exact),
        method: CoeffMethod::IntegerMu,
    })
}

/// `poly · (t + a)`.
fn mul_linear(poly: &[BigInt], a: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); poly.len() + 1];
    for (i, c) in poly.iter().enumerate() {
        out[i] += c * a;
        out[i + 1] += c;
    }
    out
}

/// `(t)_k = t(t+1)…(t+k-1)`.
fn rising_factorial_poly(k: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for i in 0..k {
        p = mul_linear(&p, &BigInt::from(i));
    }
    p
}

/// Table used by the expansions: exact for integer μ, series matching otherwise.
pub fn provision(params: &MathieuParams, order: usize, ctx: &Context) -> Result<CoeffTable> {
    match params.mu_integer {
        Some(q) => cj_integer_mu(q, params.gamma, params.lambda, ctx),
        None => cj_generic(&CoeffContext::new(params, order)?, ctx),
    }
}

/// `λ^{μ-1} Γ(s+γ+1)Γ(μ+s/λ) / (Γ(1+s/λ)Γ(s+ϑ)) - Σ_{j<M} c_j/(1-s-ϑ)_j` at `s = s0`.
///
/// For a correct table this is `O(s0^{-M})`.
pub fn ratio_oracle(table: &CoeffTable, s0: &Real, ctx: &Context) -> Result<Real> {
    if !s0.is_positive() {
        return Err(Error::Domain("ratio oracle needs s0 > 0"));
    }
    let m = table.len();
    let extra = libm::ceil(m as f64 * s0.log10_abs().max(1.0)) as u32 + 10;
    let hi = ctx.elevated(extra);
    let mu = table.mu.with_precision(hi.bits());
    let s = s0.with_precision(hi.bits());
    let lam = table.lambda;
    let theta = &mu + table.gamma;
    let s_over_l = &s / lam;
    let args = [&s + (table.gamma + 1), &mu + &s_over_l, &s_over_l + 1, &s + &theta];
    for x in &args {
        if !x.is_positive() {
            return Err(Error::Domain("ratio oracle argument at or below zero"));
        }
    }
    let log_ratio =
        ln_gamma(&args[0], &hi)? + ln_gamma(&args[1], &hi)? - ln_gamma(&args[2], &hi)? - ln_gamma(&args[3], &hi)?;
    let lhs = (log_ratio + (&mu - 1) * hi.int(lam).ln(&hi)).exp(&hi);

    let mut sum = hi.zero();
    let mut poch = hi.one(); // (1-s-ϑ)_j
    let base = hi.one() - &s - &theta;
    for (j, c) in table.values.iter().enumerate() {
        if j > 0 {
            poch *= &base + (j as i64 - 1);
        }
        sum += c.with_precision(hi.bits()) / &poch;
    }
    Ok((lhs - sum).with_precision(ctx.bits()))
}
