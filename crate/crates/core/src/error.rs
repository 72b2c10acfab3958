use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the library.
///
/// Variants fall into four families which the experiment runner maps onto
/// exit codes: configuration problems, simulation failures, numerical domain
/// failures, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence window is empty")]
    EmptyWindow,

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: i64, value: f64 },

    #[error("index {index} is outside the window [{start}, {end}]")]
    OutOfRange { index: i64, start: i64, end: i64 },

    #[error("window of length {len} is too short for {what}: need at least {needed}")]
    TooShort {
        what: &'static str,
        len: usize,
        needed: usize,
    },

    #[error("difference order {0} exceeds the supported maximum of 20")]
    OrderTooLarge(usize),

    #[error("invalid `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("|c| = {c} is within 1e-6 of 1; the neutral operator is ill-conditioned")]
    IllConditioned { c: f64 },

    #[error("seed error: {0}")]
    Seed(String),

    #[error("singular recovery at index {index}: divisor {divisor:e} is below 1e-9")]
    SingularRecovery { index: i64, divisor: f64 },

    #[error("causality violation at step n={n}: sigma(n)={sigma} is outside the available x window [{lo}, {hi}]")]
    Causality { n: i64, sigma: i64, lo: i64, hi: i64 },

    #[error("divergence at index {index} (|value| > 1e300 or non-finite); last valid index {last_valid}")]
    Divergence { index: i64, last_valid: i64 },

    #[error("domain error: g({t}) = {value} is not positive")]
    Domain { t: f64, value: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// True for failures of the simulation itself (as opposed to bad input).
    pub fn is_simulation_failure(&self) -> bool {
        matches!(
            self,
            Error::Causality { .. } | Error::Divergence { .. } | Error::SingularRecovery { .. }
        )
    }
}
