use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SepError {
    #[error("expected {expected} amplitudes, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("a state needs at least one qubit")]
    NoQubits,

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid qubit permutation: {0}")]
    BadPermutation(String),

    #[error("length {0} is not a power of two >= 2")]
    BadLength(usize),

    #[error("{n} qubits exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("zero deletion needs at least 2 nonzero amplitudes, found {0}")]
    TooFewNonzero(usize),

    #[error("split p = {p} is out of range for {n} qubits")]
    BadSplit { p: usize, n: usize },

    #[error("invalid qubit subset: {0}")]
    BadSubset(String),

    #[error("no amplitude exceeds the zero tolerance")]
    AllZero,

    #[error("state is not separable: {0}")]
    NotSeparable(String),

    #[error("invalid block specification: {0}")]
    InvalidBlocks(String),
}

pub type Result<T> = std::result::Result<T, SepError>;
