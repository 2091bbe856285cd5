use thiserror::Error;

/// Errors surfaced by the battery simulator.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The Fock-space truncation cannot represent the requested state to the
    /// accepted tail loss.
    #[error("truncation insufficient: norm deficit {deficit:.3e} exceeds {limit:.1e} (dim = {dim})")]
    TruncationInsufficient {
        deficit: f64,
        limit: f64,
        dim: usize,
    },

    /// A Gibbs-weight normalisation fell below the double-precision floor.
    #[error("underflow risk: Gibbs normalisation {z_tilde:.3e} below 1e-300")]
    UnderflowRisk { z_tilde: f64 },

    /// A tabulated level-splitting was evaluated outside its sample hull.
    /// Clamping is deliberately not performed; extend the table instead.
    #[error("tabulated profile queried at x = {x} outside hull [{lo}, {hi}]")]
    TabulatedOutOfRange { x: f64, lo: f64, hi: f64 },

    /// The Hermitian eigensolver failed to converge. Should be impossible for
    /// the Hermitian blocks built here; treated as fatal by callers.
    #[error("eigensolver failure on a {dim}x{dim} Hermitian matrix")]
    EigensolverFailure { dim: usize },

    /// Forward and reverse runs fed to a diagnostic do not form a valid
    /// Crooks quadruple.
    #[error("configuration mismatch: {reason}")]
    ConfigMismatch { reason: String },

    /// The reverse transition probability is too small for a meaningful
    /// ratio; the Crooks diagnostics are undefined there.
    #[error("degenerate ratio: reverse probability {p_reverse:.3e} below 1e-300")]
    DegenerateRatio { p_reverse: f64 },

    /// q = delta E-tilde / W_q is undefined when W_q vanishes.
    #[error("q undefined: W_q = 0")]
    UndefinedQ,

    /// The phase-space grid does not cover the state's support.
    #[error("grid too small: state support radius {support:.2} exceeds grid hull {hull:.2}")]
    GridTooSmall { support: f64, hull: f64 },

    /// A domain type was constructed with invalid parameters.
    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    /// Results failed to stabilise under dimension doubling.
    #[error("truncation convergence failure: relative drift {drift:.3e} exceeds {limit:.1e}")]
    ConvergenceFailure { drift: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            reason: reason.into(),
        }
    }

    /// Stable machine-readable category name, used by the CLI contract.
    pub fn category(&self) -> &'static str {
        match self {
            Error::TruncationInsufficient { .. } => "TruncationInsufficient",
            Error::UnderflowRisk { .. } => "UnderflowRisk",
            Error::TabulatedOutOfRange { .. } => "TabulatedOutOfRange",
            Error::EigensolverFailure { .. } => "EigensolverFailure",
            Error::ConfigMismatch { .. } => "ConfigMismatch",
            Error::DegenerateRatio { .. } => "DegenerateRatio",
            Error::UndefinedQ => "UndefinedQ",
            Error::GridTooSmall { .. } => "GridTooSmall",
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
        }
    }
}
