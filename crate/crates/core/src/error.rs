use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// A value outside the domain of an operation, e.g. `f(n) = 0` or `x <= n`.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("variable mismatch: `{left}` vs `{right}`")]
    VariableMismatch { left: String, right: String },

    #[error("coefficient {index} requested beyond truncation order {order}")]
    OrderExceeded { index: usize, order: usize },

    #[error("divisor is not invertible: {0}")]
    NotInvertible(String),

    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("oracle cap exceeded: n = {n} > {cap}")]
    OracleCap { n: usize, cap: usize },

    /// Both f and t would need to be symbolic at once.
    #[error("bivariate configuration: {0}")]
    Bivariate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
