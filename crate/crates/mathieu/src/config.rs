//! Command-line surface and the run configuration it produces.
//!
//! A [`RunConfig`] renders back to an argument vector ([`RunConfig::to_args`]) and
//! a single canonical string ([`RunConfig::canonical`]); both parse back to an equal
//! config.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mathieu_core::numerics::MIN_DIGITS;
use mathieu_core::{Complex, Context};

use crate::error::CliError;

pub const DEFAULT_PRECISION: u32 = 50;

#[derive(Parser, Debug)]
#[command(
    name = "mathieu",
    version,
    about = "Generalised Mathieu series to arbitrary precision"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
    /// Significant digits D of every reported value.
    #[arg(long, global = true, env = "MATHIEU_PREC", default_value_t = DEFAULT_PRECISION)]
    pub prec: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CommandArgs {
    /// Evaluate S(a) or its alternating variant.
    Eval(EvalArgs),
    /// Coefficients c_1..c_10 for mu = 5/4, lambda = 4, next to the printed table.
    Table1,
    /// Relative errors of the truncated expansion at a = 5, next to the printed table.
    Table2,
    /// Run the built-in identity and invariant checks.
    Verify,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// mu > 0 as a decimal literal.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_decimal_arg)]
    pub mu: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub gamma: i64,
    #[arg(long, default_value_t = 2)]
    pub lambda: i64,
    /// Evaluation point: "re", "re+imi" or "modulus@argdeg".
    #[arg(long, allow_hyphen_values = true)]
    pub a: PointInput,
    /// Number of expansion terms, or "auto" for optimal truncation.
    #[arg(long = "M", default_value = "auto")]
    pub m: TruncationArg,
    #[arg(long, value_enum, default_value_t = Method::Asymptotic)]
    pub method: Method,
    /// Alternating series Σ (-1)^{n-1} n^γ/(n^λ+a^λ)^μ.
    #[arg(long)]
    pub alternating: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Asymptotic,
    Oracle,
    Closed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&value_name(*self))
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&value_name(*self))
    }
}

/// `--M` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationArg {
    Auto,
    Fixed(usize),
}

impl FromStr for TruncationArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(TruncationArg::Auto);
        }
        match s.parse::<usize>() {
            Ok(0) => Err("M must be at least 1".into()),
            Ok(m) => Ok(TruncationArg::Fixed(m)),
            Err(_) => Err(format!("expected a positive integer or \"auto\", got {s:?}")),
        }
    }
}

impl fmt::Display for TruncationArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncationArg::Auto => f.write_str("auto"),
            TruncationArg::Fixed(m) => write!(f, "{m}"),
        }
    }
}

impl From<TruncationArg> for mathieu_core::expansion::Truncation {
    fn from(t: TruncationArg) -> Self {
        match t {
            TruncationArg::Auto => mathieu_core::expansion::Truncation::Auto,
            TruncationArg::Fixed(m) => mathieu_core::expansion::Truncation::Fixed(m),
        }
    }
}

/// The evaluation point as typed, kept as decimal strings so nothing is lost
/// before the working precision is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointInput {
    Cartesian { re: String, im: String },
    Polar { modulus: String, arg_deg: String },
}

fn check_decimal(s: &str) -> Result<(), String> {
    let ctx = Context::new(MIN_DIGITS).expect("minimum precision is valid");
    ctx.parse(s)
        .map(|_| ())
        .map_err(|_| format!("not a decimal number: {s:?}"))
}

fn parse_decimal_arg(s: &str) -> Result<String, String> {
    let s = s.trim().strip_prefix('+').unwrap_or(s.trim());
    check_decimal(s)?;
    Ok(s.to_string())
}

/// Position of the sign separating real and imaginary parts in `re±imi`.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
}

impl FromStr for PointInput {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((m, d)) = s.split_once('@') {
            let modulus = parse_decimal_arg(m)?;
            let arg_deg = parse_decimal_arg(d)?;
            return Ok(PointInput::Polar { modulus, arg_deg });
        }
        let Some(body) = s.strip_suffix(['i', 'j']) else {
            return Ok(PointInput::Cartesian {
                re: parse_decimal_arg(s)?,
                im: "0".into(),
            });
        };
        let (re, im) = match split_point(body) {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        Ok(PointInput::Cartesian {
            re: parse_decimal_arg(re)?,
            im: parse_decimal_arg(im)?,
        })
    }
}

impl fmt::Display for PointInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointInput::Cartesian { re, im } if im.starts_with('-') => write!(f, "{re}{im}i"),
            PointInput::Cartesian { re, im } => write!(f, "{re}+{im}i"),
            PointInput::Polar { modulus, arg_deg } => write!(f, "{modulus}@{arg_deg}"),
        }
    }
}

impl PointInput {
    pub fn to_complex(&self, ctx: &Context) -> Result<Complex, CliError> {
        Ok(match self {
            PointInput::Cartesian { re, im } => Complex::new(ctx.parse(re)?, ctx.parse(im)?),
            PointInput::Polar { modulus, arg_deg } => {
                let theta = ctx.parse(arg_deg)? * ctx.pi() / 180;
                Complex::from_polar(&ctx.parse(modulus)?, &theta, ctx)
            }
        })
    }
}

/// Parameters of an `eval` run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalSpec {
    pub mu: String,
    pub gamma: i64,
    pub lambda: i64,
    pub a: PointInput,
    pub truncation: TruncationArg,
    pub method: Method,
    pub alternating: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Eval(EvalSpec),
    Table1,
    Table2,
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval(_) => "eval",
            Command::Table1 => "table1",
            Command::Table2 => "table2",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub precision: u32,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let command = match cli.command {
            CommandArgs::Eval(e) => Command::Eval(EvalSpec {
                mu: e.mu,
                gamma: e.gamma,
                lambda: e.lambda,
                a: e.a,
                truncation: e.m,
                method: e.method,
                alternating: e.alternating,
            }),
            CommandArgs::Table1 => Command::Table1,
            CommandArgs::Table2 => Command::Table2,
            CommandArgs::Verify => Command::Verify,
        };
        RunConfig {
            command,
            precision: cli.prec,
            format: cli.format,
            output: cli.output,
        }
    }
}

impl RunConfig {
    /// Parses arguments without the program name.
    pub fn from_args<I, S>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<std::ffi::OsString> + Clone,
    {
        let argv = std::iter::once(std::ffi::OsString::from("mathieu")).chain(args.into_iter().map(Into::into));
        Cli::try_parse_from(argv).map(RunConfig::from)
    }

    /// Every setting spelled out, defaults included.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = vec![self.command.name().to_string()];
        if let Command::Eval(e) = &self.command {
            out.extend([
                "--mu".into(),
                e.mu.clone(),
                "--gamma".into(),
                e.gamma.to_string(),
                "--lambda".into(),
                e.lambda.to_string(),
                "--a".into(),
                e.a.to_string(),
                "--M".into(),
                e.truncation.to_string(),
                "--method".into(),
                e.method.to_string(),
            ]);
            if e.alternating {
                out.push("--alternating".into());
            }
        }
        out.extend([
            "--prec".into(),
            self.precision.to_string(),
            "--format".into(),
            self.format.to_string(),
        ]);
        if let Some(path) = &self.output {
            out.push("--output".into());
            out.push(path.to_string_lossy().into_owned());
        }
        out
    }

    /// [`to_args`](Self::to_args) joined by spaces; arguments containing whitespace
    /// or quotes are single-quoted.
    pub fn canonical(&self) -> String {
        self.to_args()
            .iter()
            .map(|a| {
                if a.is_empty() || a.contains(|c: char| c.is_whitespace() || c == '\'') {
                    format!("'{}'", a.replace('\'', "''"))
                } else {
                    a.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_canonical(s: &str) -> Result<Self, CliError> {
        let args = split_canonical(s).ok_or_else(|| CliError::Invalid(format!("unbalanced quotes in {s:?}")))?;
        RunConfig::from_args(args).map_err(|e| CliError::Invalid(e.to_string()))
    }
}

/// Inverse of the quoting in [`RunConfig::canonical`] (`''` inside quotes is a quote).
fn split_canonical(s: &str) -> Option<Vec<String>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        let Some(&first) = chars.peek() else { break };
        let mut word = String::new();
        if first == '\'' {
            chars.next();
            loop {
                match chars.next()? {
                    '\'' if chars.peek() == Some(&'\'') => {
                        chars.next();
                        word.push('\'');
                    }
                    '\'' => break,
                    c => word.push(c),
                }
            }
        } else {
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                word.push(c);
                chars.next();
            }
        }
        out.push(word);
    }
    Some(out)
}
