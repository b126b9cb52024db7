use thiserror::Error;

/// Errors raised anywhere in the phase-space toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum WignerError {
    /// Grid bounds reversed, degenerate, non-finite, or too few nodes.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A generic precondition on an argument failed.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two fields (or a field and an operation) live on incompatible grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A wavefunction carries (numerically) no norm on the sampling domain.
    #[error("wavefunction is not normalizable on the grid (norm = {0:e})")]
    NonNormalizable(f64),

    /// An operation requiring a normalized field received one that is not.
    #[error("field is not normalized (integral = {integral}, tolerance = {tol:e})")]
    Unnormalized { integral: f64, tol: f64 },

    /// A quadrature did not reproduce the expected normalization.
    #[error("quadrature did not converge: integral = {integral}, expected 1 within {tol:e}")]
    NonConvergence { integral: f64, tol: f64 },

    /// A transformed field lost mass through the grid boundary.
    #[error("support left the grid: integral after transform = {integral}")]
    OutOfDomain { integral: f64 },

    /// Conditioning on an outcome whose probability density is (numerically) zero.
    #[error("conditioning on an outcome with density {density:e} below {threshold:e}")]
    DegenerateConditioning { density: f64, threshold: f64 },

    /// The requested state does not exist (for instance a photon subtracted from vacuum).
    #[error("undefined state: {0}")]
    UndefinedState(String),

    /// The covariance matrix of a Gaussian is singular or unphysical.
    #[error("invalid covariance: {0}")]
    InvalidCovariance(String),

    /// A Fock cutoff leaves more population in the truncated tail than allowed.
    #[error("Fock cutoff {cutoff} too small: truncated tail population {tail:e}")]
    Truncation { cutoff: usize, tail: f64 },

    /// The operation is not defined for the given state family.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A resource-state string could not be parsed.
    #[error("cannot parse state spec {input:?}: {reason}")]
    Parse { input: String, reason: String },

    /// A postselection window could not be constructed.
    #[error("window error: {0}")]
    Window(String),

    /// File input/output failure.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for WignerError {
    fn from(err: std::io::Error) -> Self {
        Self::Io(err.to_string())
    }
}

pub type WignerResult<T> = Result<T, WignerError>;
