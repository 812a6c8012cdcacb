use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },

    #[error("polynomial vanishes at interval endpoint {at} (|p| <= zero_tol); perturb the endpoint")]
    DegenerateEndpoint { at: f64 },

    #[error("invalid interval ({a}, {b}): need a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("operation requires degree >= {required}, got {actual}")]
    DegreeTooLow { required: usize, actual: usize },

    #[error("constant term is zero; the reciprocal polynomial is undefined")]
    ZeroConstantTerm,

    #[error("sign variations increased across the interval (v_a = {va}, v_b = {vb})")]
    MonotonicityViolated { va: usize, vb: usize },

    #[error("root iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("unresolved root cluster in ({a}, {b}): Budan-Fourier bound {bound} at minimum width")]
    UnresolvedCluster { a: f64, b: f64, bound: usize },

    #[error("1 - sigma*phi_x is zero; the forward-rule matrix is undefined")]
    SingularPrefactor,

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParams {
            name: name.to_string(),
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
