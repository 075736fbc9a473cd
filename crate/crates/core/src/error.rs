use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed arguments: symbols out of range, inadmissible words, bad degrees.
    #[error("invalid input: {0}")]
    Input(String),

    /// The adjacency matrix does not present a covering map.
    #[error("{0}")]
    InvalidSystem(String),

    /// A spec or element file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit exceeded: {what} would need {requested}, cap is {cap}")]
    Resource {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("operation requires the {required} representation")]
    UnsupportedMode { required: &'static str },

    /// A probe residual landed between the commutation and non-commutation thresholds.
    #[error("ambiguous truncation: residual {residual:e} lies in ({low:e}, {high:e}); enlarge the basis")]
    Ambiguous { residual: f64, low: f64, high: f64 },

    #[error("witness precondition failed: {0}")]
    Witness(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
