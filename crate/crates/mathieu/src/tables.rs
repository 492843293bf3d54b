//! Reproductions of the two published tables for `μ = 5/4`, `λ = 4`, `γ ∈ {0, 2, -2}`.
//!
//! Published values sit next to ours rather than being asserted, so that
//! disagreements stay visible.

use mathieu_core::coeffs::{cj_generic, ratio_oracle, CoeffContext, CoeffMethod, CoeffTable};
use mathieu_core::expansion::{algebraic_h, expansion_real, gamma_term, optimal_truncation, Truncation};
use mathieu_core::oracle::direct_sum;
use mathieu_core::{make_params, Complex, Context, MathieuParams, Real};

use crate::error::CliError;
use crate::report::Report;

pub const GAMMAS: [i64; 3] = [0, 2, -2];
pub const LAMBDA: i64 = 4;

pub fn mu(ctx: &Context) -> Real {
    ctx.ratio(5, 4)
}

pub fn params(gamma: i64, ctx: &Context) -> Result<MathieuParams, CliError> {
    Ok(make_params(mu(ctx), gamma, LAMBDA, false)?)
}

/// Published `c_1..c_10`, one array per entry of [`GAMMAS`].
pub const TABLE1_PRINTED: [[&str; 10]; 3] = [
    [
        "-4.6875000000e-1",
        "-3.5888671875e-1",
        "-4.0534973145e-1",
        "-3.3581793308e-1",
        "7.5268601999e-1",
        "6.4821335676e0",
        "2.6358910987e1",
        "4.5855530043e1",
        "-3.7955573596e2",
        "-5.1286970180e3",
    ],
    [
        "3.1250000000e-2",
        "1.5673828125e-1",
        "2.3551940918e-1",
        "1.6646325588e-1",
        "-9.0884858742e-1",
        "-6.6501405553e0",
        "-2.7627888119e1",
        "-5.8401959193e1",
        "2.8858407940e2",
        "4.6231064924e3",
    ],
    [
        "-2.1250000000e0",
        "-2.5546875000e0",
        "-6.8701171875e0",
        "-2.5683746338e1",
        "-1.1944799423e2",
        "-6.6193037868e2",
        "-4.2794038211e3",
        "-3.1831413077e4",
        "-2.6901844936e5",
        "-2.5504879368e6",
    ],
];

/// Significant figures printed in the coefficient table.
pub const TABLE1_DIGITS: usize = 11;

/// Truncation indices of the published error table; index `j` keeps terms `0..=j`.
pub const TABLE2_J: [usize; 9] = [0, 1, 2, 3, 4, 6, 8, 10, 12];

/// Published `Ŝ` at `a = 5`.
pub const TABLE2_HEADS: [&str; 3] = ["-1.54766e-12", "-3.59325e-11", "5.75174e-14"];

/// Published absolute relative errors, rows follow [`TABLE2_J`].
pub const TABLE2_PRINTED: [[&str; 3]; 9] = [
    ["1.980e-2", "1.178e-4", "3.237e-4"],
    ["3.378e-4", "1.568e-4", "1.530e-3"],
    ["1.102e-7", "1.086e-5", "2.066e-4"],
    ["3.649e-7", "1.758e-7", "1.920e-5"],
    ["2.697e-8", "4.874e-9", "3.210e-7"],
    ["2.785e-11", "1.265e-9", "1.437e-7"],
    ["1.220e-11", "3.334e-12", "1.363e-9"],
    ["9.421e-14", "1.497e-12", "9.459e-10"],
    ["2.607e-14", "1.277e-14", "2.768e-11"],
];

/// Rounds a decimal literal or value to `digits` significant figures.
pub fn rounded(v: &Real, digits: usize) -> String {
    v.to_sci_string(digits)
}

/// `|ours - printed|` within half a unit in the `figures`-th significant figure of `printed`.
pub fn agrees_to_figures(ours: &Real, printed: &Real, figures: i64, ctx: &Context) -> bool {
    let exponent = printed.log10_abs().floor() as i64;
    let half_unit = ctx.pow10(exponent + 1 - figures) / 2;
    (ours - printed).abs() <= half_unit
}

pub fn rounded_literal(s: &str, digits: usize, ctx: &Context) -> Result<String, CliError> {
    Ok(ctx.parse(s)?.to_sci_string(digits))
}

#[derive(Debug, Clone)]
pub struct Table1Column {
    pub gamma: i64,
    /// `c_0..c_10`.
    pub computed: CoeffTable,
    pub printed: Vec<Real>,
    /// Agreement to every printed digit, per `j = 1..10`.
    pub agrees: Vec<bool>,
}

pub fn table1(ctx: &Context) -> Result<Vec<Table1Column>, CliError> {
    GAMMAS
        .iter()
        .zip(TABLE1_PRINTED)
        .map(|(&gamma, printed)| {
            let cc = CoeffContext::from_parts(mu(ctx), gamma, LAMBDA, 11)?;
            let computed = cj_generic(&cc, ctx)?;
            let printed = printed.iter().map(|s| ctx.parse(s)).collect::<Result<Vec<_>, _>>()?;
            let agrees = printed
                .iter()
                .zip(&computed.values[1..])
                .map(|(p, c)| rounded(p, TABLE1_DIGITS) == rounded(c, TABLE1_DIGITS))
                .collect();
            Ok(Table1Column {
                gamma,
                computed,
                printed,
                agrees,
            })
        })
        .collect()
}

/// `c_0 = 1` followed by the published column.
pub fn printed_table(col: &Table1Column, ctx: &Context) -> CoeffTable {
    let mut values = vec![ctx.one()];
    values.extend(col.printed.iter().cloned());
    CoeffTable {
        values,
        exact: None,
        method: CoeffMethod::GenericMatching,
        ..col.computed.clone()
    }
}

/// Large-`s` checks of the defining gamma-ratio expansion at a sequence of `s0`.
#[derive(Debug, Clone)]
pub struct RatioCheck {
    pub s0: Vec<i64>,
    pub computed: Vec<Real>,
    pub printed: Vec<Real>,
}

impl RatioCheck {
    /// Mean factor by which the discrepancy shrinks when `s0` doubles.
    pub fn decay(values: &[Real]) -> f64 {
        let logs: Vec<f64> = values.iter().map(|v| v.log2_abs()).collect();
        let steps = logs.len().saturating_sub(1).max(1) as f64;
        ((logs[0] - logs[logs.len() - 1]) / steps).exp2()
    }
}

pub const RATIO_S0: [i64; 3] = [100, 200, 400];

pub fn ratio_check(col: &Table1Column, ctx: &Context) -> Result<RatioCheck, CliError> {
    let printed = printed_table(col, ctx);
    let mut out = RatioCheck {
        s0: RATIO_S0.to_vec(),
        computed: Vec::new(),
        printed: Vec::new(),
    };
    for s0 in RATIO_S0 {
        let s = ctx.int(s0);
        out.computed.push(ratio_oracle(&col.computed, &s, ctx)?.abs());
        out.printed.push(ratio_oracle(&printed, &s, ctx)?.abs());
    }
    Ok(out)
}

pub fn table1_report(ctx: &Context) -> Result<Report, CliError> {
    let cols = table1(ctx)?;
    let mut r = Report::new(
        "coefficients c_j, mu = 5/4, lambda = 4",
        &["gamma", "j", "computed", "printed", "agrees"],
    );
    r.meta("digits", ctx.digits().to_string());
    r.meta("method", cols[0].computed.method.name());
    for col in &cols {
        for j in 1..=10 {
            r.row(vec![
                col.gamma.to_string(),
                j.to_string(),
                rounded(&col.computed.values[j], ctx.digits() as usize),
                rounded(&col.printed[j - 1], TABLE1_DIGITS),
                if col.agrees[j - 1] { "yes" } else { "NO" }.into(),
            ]);
        }
        let check = ratio_check(col, ctx)?;
        for (i, s0) in check.s0.iter().enumerate() {
            r.meta(
                format!("ratio_oracle[gamma={},s0={}]", col.gamma, s0),
                format!(
                    "computed {} printed {}",
                    rounded(&check.computed[i], 3),
                    rounded(&check.printed[i], 3)
                ),
            );
        }
        if col.agrees.iter().any(|a| !a) {
            r.note(format!(
                "gamma = {}: printed column deviates; under s0 -> 2 s0 the ratio-oracle discrepancy shrinks by {:.3e} with the computed values and by {:.3} with the printed ones",
                col.gamma,
                RatioCheck::decay(&check.computed),
                RatioCheck::decay(&check.printed)
            ));
        }
    }
    Ok(r)
}

#[derive(Debug, Clone)]
pub struct Table2Column {
    pub gamma: i64,
    pub s_hat: Real,
    /// `(E_j - Ŝ)/Ŝ` per entry of [`TABLE2_J`], `E_j` keeping terms `0..=j`.
    pub signed_rel: Vec<Real>,
    /// Optimal truncation `M*` at `a = 5`.
    pub m_star: usize,
}

pub const TABLE2_A: i64 = 5;

/// `Ŝ = S - Γ-term - H` from the oracle at `a = 5`.
pub fn s_hat(p: &MathieuParams, ctx: &Context) -> Result<Real, CliError> {
    let a = Complex::from_real(ctx.int(TABLE2_A));
    let target = ctx.pow10(-(ctx.digits() as i64 + 3));
    let s = direct_sum(p, &a, &target, ctx)?;
    Ok(s.re - gamma_term(p, &a, ctx)?.re - algebraic_h(p, &a, ctx)?.re)
}

pub fn table2(ctx: &Context) -> Result<Vec<Table2Column>, CliError> {
    let a = ctx.int(TABLE2_A);
    GAMMAS
        .iter()
        .map(|&gamma| {
            let p = params(gamma, ctx)?;
            let s_hat = s_hat(&p, ctx)?;
            let mut signed_rel = Vec::with_capacity(TABLE2_J.len());
            for j in TABLE2_J {
                let rep = expansion_real(&p, &a, Truncation::Fixed(j + 1), ctx)?;
                signed_rel.push((rep.exponential_total(ctx).re - &s_hat) / &s_hat);
            }
            let m_star = optimal_truncation(&p, &Complex::from_real(a.clone()), ctx)?.m;
            Ok(Table2Column {
                gamma,
                s_hat,
                signed_rel,
                m_star,
            })
        })
        .collect()
}

/// Relative offset `ε` of a reference value `Ŝ(1+ε)` that turns our signed error at
/// the last tabulated `j` into the printed one. A reference carrying such an offset
/// reports `|r_j - ε|` instead of `|r_j|`.
pub fn reference_offset(col: &Table2Column, printed: &[&str; 9], ctx: &Context) -> Result<Real, CliError> {
    let last = col.signed_rel.len() - 1;
    let r = &col.signed_rel[last];
    let p = ctx.parse(printed[last])?;
    Ok(if r.is_negative() { r + p } else { r - p })
}

pub fn column_printed(i: usize) -> [&'static str; 9] {
    std::array::from_fn(|k| TABLE2_PRINTED[k][i])
}

pub fn table2_report(ctx: &Context) -> Result<Report, CliError> {
    let cols = table2(ctx)?;
    let mut r = Report::new(
        "relative error of the truncated expansion, mu = 5/4, lambda = 4, a = 5",
        &["gamma", "j", "rel_error", "printed", "agrees_3sf", "with_offset"],
    );
    r.meta("digits", ctx.digits().to_string());
    r.meta("s_hat_definition", "oracle - gamma_term - algebraic");
    for (i, col) in cols.iter().enumerate() {
        r.meta(
            format!("s_hat[gamma={}]", col.gamma),
            format!(
                "{} (printed {})",
                rounded(&col.s_hat, ctx.digits() as usize),
                TABLE2_HEADS[i]
            ),
        );
        r.meta(format!("M*[gamma={}]", col.gamma), col.m_star.to_string());
    }
    for (i, col) in cols.iter().enumerate() {
        let printed = column_printed(i);
        let eps = reference_offset(col, &printed, ctx)?;
        let asserted = col.gamma != -2;
        for (k, j) in TABLE2_J.iter().enumerate() {
            let ours = col.signed_rel[k].abs();
            let p = ctx.parse(printed[k])?;
            let agrees = agrees_to_figures(&ours, &p, 3, ctx);
            let shifted = (&col.signed_rel[k] - &eps).abs();
            r.row(vec![
                col.gamma.to_string(),
                j.to_string(),
                rounded(&ours, 4),
                printed[k].to_string(),
                match (asserted, agrees) {
                    (false, _) => "n/a".into(),
                    (true, true) => "yes".into(),
                    (true, false) => "NO".into(),
                },
                rounded(&shifted, 4),
            ]);
        }
        r.meta(format!("reference_offset[gamma={}]", col.gamma), rounded(&eps, 3));
    }
    r.note("gamma = -2 errors use the computed coefficients; the printed column is shown, not asserted");
    r.note("with_offset: |r_j - eps| for a reference S_hat(1+eps) fitted at j = 12");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_agreement_uses_half_units() {
        let ctx = Context::new(30).unwrap();
        let p = ctx.parse("1.265e-9").unwrap();
        assert!(agrees_to_figures(&ctx.parse("1.2649e-9").unwrap(), &p, 3, &ctx));
        assert!(agrees_to_figures(&ctx.parse("1.2699e-9").unwrap(), &p, 3, &ctx));
        assert!(!agrees_to_figures(&ctx.parse("1.2701e-9").unwrap(), &p, 3, &ctx));
        assert!(!agrees_to_figures(
            &ctx.parse("9.438e-14").unwrap(),
            &ctx.parse("9.421e-14").unwrap(),
            3,
            &ctx
        ));
    }

    #[test]
    fn printed_tables_parse() {
        let ctx = Context::new(30).unwrap();
        for row in TABLE1_PRINTED.iter() {
            for s in row {
                ctx.parse(s).unwrap();
            }
        }
        for row in TABLE2_PRINTED {
            for s in row {
                assert!(ctx.parse(s).unwrap().is_positive());
            }
        }
    }

    #[test]
    fn coefficient_columns_at_low_order() {
        let ctx = Context::new(50).unwrap();
        let cols = table1(&ctx).unwrap();
        assert_eq!(cols[0].computed.values[1], ctx.ratio(-15, 32));
        assert_eq!(cols[2].computed.values[1], ctx.ratio(-31, 32));
        assert!(cols[0].agrees.iter().all(|a| *a));
        assert!(!cols[2].agrees[0]);
    }
}
