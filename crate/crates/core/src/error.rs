use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation order must be non-negative, got {0}")]
    InvalidTruncation(i64),
    #[error("series has zero constant term and is not a unit")]
    NotAUnit,
    #[error("inner series of a composition must have order at least 1")]
    CompositionNeedsPositiveOrder,
    #[error("series must have order exactly 1 to be inverted under composition")]
    NotInvertibleUnderComposition,
    #[error("exponential needs a series with zero constant term")]
    ExpNeedsZeroConstantTerm,
    #[error("rational power needs a series with constant term 1")]
    PowNeedsUnitConstantOne,
    #[error("T(f|g) needs f(0) != 0 and g(0) != 0")]
    NotRiordan,
    #[error("requested depth {requested} exceeds truncation order {available}")]
    InsufficientTruncation { requested: usize, available: usize },
    #[error("matrix violates the L(chi, alpha) pattern at entry ({row}, {col})")]
    PatternFitFailure { row: usize, col: usize },
    #[error("matrix needs at least {min} rows, got {got}")]
    MatrixTooSmall { min: usize, got: usize },
    #[error("result has irrational entries and cannot be represented in exact mode")]
    ExactModeIrrational,
    #[error("generator must have zero diagonal (chi(0) = alpha(0) = 0)")]
    RequiresZeroDiagonal,
    #[error("matrix is not unipotent (unit diagonal)")]
    NotUnipotent,
    #[error("column 1 of the exponential does not have order 1")]
    DegenerateColumn,
    #[error("unsupported generator: {0}")]
    UnsupportedGenerator(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("step count must be at least 1")]
    InvalidSteps,
    #[error("involution is not a time-reversal symmetry of the problem")]
    NotTimeReversal,
    #[error("{0}")]
    Parse(String),
}
