use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Reasons a parameter bundle is rejected.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ValidationError {
    #[error("mu must be positive")]
    NonPositiveMu,
    #[error("lambda must be a positive even integer, got {0}")]
    NonPositiveLambda(i64),
    #[error("lambda must be even, got {0}")]
    OddLambda(i64),
    #[error("gamma must be an even integer, got {0}")]
    OddGamma(i64),
    #[error("series diverges: delta = lambda*mu - gamma = {delta} must exceed 1")]
    Divergent { delta: f64 },
    #[error("Gamma(mu - (gamma+1)/lambda) has a pole")]
    GammaPole,
    #[error("precision must be at least {min} digits, got {got}")]
    Precision { min: u32, got: u32 },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    /// A function was called outside its mathematical domain (a caller bug).
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("evaluation point must be non-zero")]
    ZeroArgument,
    #[error("|arg a| = {arg_deg:.4} deg is outside the sector |arg a| < {limit_deg:.4} deg")]
    SectorViolation { arg_deg: f64, limit_deg: f64 },
    #[error("asymptotic regime not reached: min Re X_r = {re_x:.4} < 2")]
    RegimeNotReached { re_x: f64 },
    #[error("precision escalation required: {0}")]
    PrecisionEscalation(&'static str),
    #[error("{what} did not converge within {limit} steps")]
    NotConverged { what: &'static str, limit: usize },
    #[error("internal consistency error: {0}")]
    Consistency(&'static str),
    #[error("mu must be a positive integer for this operation")]
    NonIntegerMu,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Coarse classification used to map failures onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Sector,
    Precision,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Validation(_) | Error::Parse(_) | Error::NonIntegerMu | Error::Domain(_) => ErrorKind::Validation,
            Error::ZeroArgument | Error::SectorViolation { .. } | Error::RegimeNotReached { .. } => ErrorKind::Sector,
            Error::PrecisionEscalation(_) | Error::NotConverged { .. } => ErrorKind::Precision,
            Error::Consistency(_) => ErrorKind::Internal,
        }
    }
}
