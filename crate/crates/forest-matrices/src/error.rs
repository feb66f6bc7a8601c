use thiserror::Error;

/// Errors produced by parsing, matrix kernels, and the forest computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix: pivot {pivot:e} below threshold {threshold:e}")]
    SingularMatrix { pivot: f64, threshold: f64 },

    /// A kernel produced a non-finite value (the inputs were too large for f64).
    #[error("overflow: non-finite value produced in {0}")]
    Overflow(&'static str),

    #[error("numerical instability: {0}")]
    NumericalInstability(String),

    #[error("size limit exceeded: n = {n} but this computation is limited to n <= {max}")]
    SizeLimit { n: usize, max: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("all columns of the evaluated forest matrix are numerically zero; no eigenvector can be extracted")]
    NoEigenvectorColumns,

    #[error("degenerate graph: no arcs, so the requested forest formula is undefined")]
    DegenerateGraph,

    #[error("multichain: {d} sink components, so no unique stationary distribution exists; use the long-run matrix instead")]
    Multichain { d: usize },

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 1 for input errors, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Overflow(_)
            | Error::NumericalInstability(_)
            | Error::SingularMatrix { .. }
            | Error::RootFinding(_)
            | Error::NoEigenvectorColumns => 2,
            _ => 1,
        }
    }
}
