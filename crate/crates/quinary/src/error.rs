use thiserror::Error;

/// Errors shared across the crate.
///
/// All arithmetic in this crate is exact; `Overflow` means a checked 64-bit
/// operation left the representable range, never that a result was rounded.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime in 3..=31")]
    BadModulus(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("matrix rows are linearly dependent")]
    DependentRows,

    #[error("gram matrix is not symmetric positive definite")]
    NotPositiveDefinite,

    #[error("code is not self-orthogonal: G·G^T != 0 (mod p)")]
    NotSelfOrthogonal,

    #[error("operation requires p = 5, got p = {0}")]
    RequiresF5(u32),

    #[error("sweep over 5^{k} codewords exceeds the default budget (k <= {max}); override explicitly to proceed")]
    SweepBudget { k: usize, max: usize },

    #[error("zero code has no nonzero codeword")]
    ZeroCode,

    #[error("self-dual codes require even length, got {0}")]
    OddLength(usize),

    #[error("D_n+ requires 4 | n, got n = {0}")]
    GlueNotIntegral(usize),

    #[error("ambient frame mismatch: {0}")]
    FrameMismatch(String),

    #[error("basis has support outside the given coordinates (column {0})")]
    SupportMismatch(usize),

    #[error("short-vector components do not exhaust the lattice")]
    NotExhaustive,

    #[error("MacWilliams transform produced a non-integer coefficient at {0:?}")]
    NonIntegerCoefficient((u32, u32)),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("wall-clock budget of {0} s exceeded")]
    BudgetExceeded(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
