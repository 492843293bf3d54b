//! Execution of a [`RunConfig`].

use std::io::Write;

use mathieu_core::expansion::{closed_form_integer_mu, expand, expansion_real, ExpansionReport, Truncation};
use mathieu_core::oracle::{direct_sum, direct_sum_alternating};
use mathieu_core::{make_params, Complex, Context, MathieuParams, Real};

use crate::config::{Command, EvalSpec, Method, RunConfig};
use crate::error::{exit, CliError};
use crate::report::Report;
use crate::tables::{rounded, table1_report, table2_report};
use crate::verify::verify_report;

/// Rendered output plus the exit code it should end the process with.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

const EVAL_COLUMNS: [&str; 7] = [
    "quantity",
    "method",
    "re",
    "im",
    "m_used",
    "coeff_method",
    "remainder_estimate",
];

fn oracle_target(ctx: &Context) -> Real {
    ctx.pow10(-(ctx.digits() as i64 + 3))
}

fn value_row(quantity: &str, method: &str, z: &Complex, ctx: &Context) -> Vec<String> {
    let d = ctx.digits() as usize;
    vec![
        quantity.into(),
        method.into(),
        rounded(&z.re, d),
        rounded(&z.im, d),
        "-".into(),
        "-".into(),
        "-".into(),
    ]
}

fn expansion_row(rep: &ExpansionReport, ctx: &Context) -> Vec<String> {
    let mut row = value_row("S", rep.kind.name(), &rep.total, ctx);
    row[4] = rep.m_used.to_string();
    row[5] = rep.coeff_method.name().into();
    row[6] = rep.remainder_estimate.to_sci_string(3);
    row
}

fn asymptotic(p: &MathieuParams, a: &Complex, trunc: Truncation, ctx: &Context) -> Result<ExpansionReport, CliError> {
    let real_axis = a.im.is_zero() && a.re.is_positive();
    Ok(if real_axis && !p.alternating {
        expansion_real(p, &a.re, trunc, ctx)?
    } else {
        expand(p, a, trunc, ctx)?
    })
}

fn oracle(p: &MathieuParams, a: &Complex, ctx: &Context) -> Result<Complex, CliError> {
    let target = oracle_target(ctx);
    Ok(if p.alternating {
        direct_sum_alternating(p, a, &target, ctx)?
    } else {
        direct_sum(p, a, &target, ctx)?
    })
}

/// Terminating form; the alternating sum goes through `S(a) - 2^(1-δ) S(a/2)`.
fn closed(p: &MathieuParams, a: &Complex, ctx: &Context) -> Result<Complex, CliError> {
    let plain = p.with_alternating(false);
    let s = closed_form_integer_mu(&plain, a, ctx)?.total;
    if !p.alternating {
        return Ok(s);
    }
    let half = a.scale(&ctx.ratio(1, 2));
    let s_half = closed_form_integer_mu(&plain, &half, ctx)?.total;
    let factor = (ctx.one() - &p.delta) * ctx.int(2).ln(ctx);
    Ok(s - s_half.scale(&factor.exp(ctx)))
}

pub fn eval_report(spec: &EvalSpec, ctx: &Context) -> Result<Report, CliError> {
    let mu = ctx.parse(&spec.mu)?;
    let p = make_params(mu, spec.gamma, spec.lambda, spec.alternating)?;
    let a = spec.a.to_complex(ctx)?;
    let trunc: Truncation = spec.truncation.into();
    let title = if spec.alternating {
        "alternating series sum (-1)^(n-1) n^gamma/(n^lambda+a^lambda)^mu"
    } else {
        "series sum n^gamma/(n^lambda+a^lambda)^mu"
    };
    let mut r = Report::new(title, &EVAL_COLUMNS);
    r.meta("digits", ctx.digits().to_string());
    r.meta("working_digits", ctx.working_digits().to_string());
    r.meta("mu", spec.mu.clone());
    r.meta("gamma", spec.gamma.to_string());
    r.meta("lambda", spec.lambda.to_string());
    r.meta("a", spec.a.to_string());
    r.meta("delta", rounded(&p.delta, 10));
    r.meta("alternating", spec.alternating.to_string());
    match spec.method {
        Method::Asymptotic => {
            let rep = asymptotic(&p, &a, trunc, ctx)?;
            if rep.table_exhausted {
                r.note("auto truncation reached the coefficient cap before the terms turned");
            }
            r.row(expansion_row(&rep, ctx));
        }
        Method::Oracle => {
            r.row(value_row("S", "oracle", &oracle(&p, &a, ctx)?, ctx));
            r.meta("oracle_target", oracle_target(ctx).to_sci_string(3));
        }
        Method::Closed => {
            r.row(value_row("S", "closed-form", &closed(&p, &a, ctx)?, ctx));
        }
        Method::Both => {
            let rep = asymptotic(&p, &a, trunc, ctx)?;
            let s = oracle(&p, &a, ctx)?;
            let diff = (&rep.total - &s).abs();
            r.row(expansion_row(&rep, ctx));
            r.row(value_row("S", "oracle", &s, ctx));
            r.meta("oracle_target", oracle_target(ctx).to_sci_string(3));
            r.meta("abs_difference", diff.to_sci_string(3));
            r.meta("remainder_estimate", rep.remainder_estimate.to_sci_string(3));
            if diff > &rep.remainder_estimate * 10 + oracle_target(ctx) {
                r.note("difference exceeds ten times the remainder estimate");
            }
        }
    }
    Ok(r)
}

pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    let ctx = Context::new(config.precision)?;
    let (mut report, exit_code) = match &config.command {
        Command::Eval(spec) => (eval_report(spec, &ctx)?, exit::SUCCESS),
        Command::Table1 => (table1_report(&ctx)?, exit::SUCCESS),
        Command::Table2 => (table2_report(&ctx)?, exit::SUCCESS),
        Command::Verify => {
            let (r, ok) = verify_report(&ctx)?;
            (r, if ok { exit::SUCCESS } else { exit::VERIFY_FAILED })
        }
    };
    report.meta("command", config.command.name());
    report.meta("config", config.canonical());
    report.meta("crate_version", env!("CARGO_PKG_VERSION"));
    Ok(Outcome { report, exit_code })
}

/// Executes `config` and writes the rendered report to stdout or `--output`.
pub fn run(config: &RunConfig) -> Result<i32, CliError> {
    let outcome = execute(config)?;
    let text = outcome.report.render(config.format)?;
    match &config.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(outcome.exit_code)
}
