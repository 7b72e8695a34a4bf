use thiserror::Error;

/// Errors raised across the numerical pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no sign change on [{a}, {b}] (f(a) = {fa}, f(b) = {fb})")]
    Bracket { a: f64, b: f64, fa: f64, fb: f64 },

    #[error("QR iteration did not converge: rows {lo}..={hi} unresolved after {iterations} iterations")]
    Convergence { lo: usize, hi: usize, iterations: usize },

    #[error("singular matrix: pivot {pivot:e} at column {column} below threshold {threshold:e}")]
    SingularMatrix { column: usize, pivot: f64, threshold: f64 },

    #[error("root enumeration failed: found {found} of {wanted} roots below {limit}")]
    Enumeration { found: usize, wanted: usize, limit: f64 },

    #[error("lambda = {lambda} lies on the pole {pole}")]
    Pole { lambda: f64, pole: f64 },

    #[error("shift equation root outside the first branch: {0}")]
    Branch(String),

    #[error("no confining minimum of the effective potential: {0}")]
    Confinement(String),

    #[error("expansion point is not a minimum: V''(T) = {curvature:e}")]
    Saddle { curvature: f64 },

    #[error("singular pencil: {0}")]
    Pencil(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
