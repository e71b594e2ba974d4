use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Newton-Raphson did not converge after {iterations} iterations (|grad|_inf = {grad_norm:e})")]
    MleDidNotConverge { iterations: usize, grad_norm: f64 },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("every |log p(x_i | theta)| is zero; subsampling scores are degenerate")]
    AllZeroScores,

    #[error("weight at index {index} is not a finite non-negative number ({value})")]
    NonFiniteWeight { index: usize, value: f64 },

    #[error("log-prior is -inf at the proposed parameter")]
    PriorZero,

    #[error("no draws left after burn-in and thinning")]
    EmptyChain,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed chain file: {0}")]
    ChainFormat(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
