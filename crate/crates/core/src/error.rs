use thiserror::Error;

/// Errors produced by the exact kernels, the polynomial engine and the drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has rank zero")]
    ZeroMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("system is inconsistent")]
    InconsistentSystem,
    #[error("n = {n} exceeds the exhaustive cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("polynomial and basis use different monomial orders")]
    OrderMismatch,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("root iteration did not converge within {0} iterations")]
    IterationLimit(usize),
    #[error("back-substitution degenerated at partial point {0}")]
    DegenerateBackSubstitution(String),
    #[error("input system is inconsistent")]
    InconsistentInput,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
