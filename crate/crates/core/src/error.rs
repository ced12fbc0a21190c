use thiserror::Error;

/// Errors raised anywhere in the construction and certification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LrcError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate abscissa in interpolation data")]
    DuplicateAbscissa,
    #[error("valuation of the zero function is undefined")]
    ZeroFunction,
    #[error("parameter violation: {0}")]
    ParamViolation(String),
    #[error("no subgroup found: {0}")]
    NoSubgroupFound(String),
    #[error("no invariant function found: {0}")]
    NoInvariantFound(String),
    #[error("not enough free orbits: need {needed}, found {found}")]
    NotEnoughFreeOrbits { needed: usize, found: usize },
    #[error("separating function is not injective on block {0}")]
    SeparationFailure(usize),
    #[error("modified evaluation still hits a pole at position {0}")]
    PoleCancellationFailure(usize),
    #[error("degenerate Riemann-Roch system: {0}")]
    DegenerateSystem(String),
    #[error("automorphism recipe inapplicable: {0}")]
    RecipeInapplicable(String),
    #[error("no invariant separating function with the required pole divisor")]
    NoInvariantZ,
    #[error("no function with the exact pole divisor: {0}")]
    ExactPoleUnreachable(String),
    #[error("singular submatrix in block {block} on rows {rows:?}")]
    SubmatrixSingular { block: usize, rows: Vec<usize> },
    #[error("no function with the required divisor: {0}")]
    NoSuchFunction(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("too many erasures: {erased} erased, group tolerates {tolerated}")]
    TooManyErasures { erased: usize, tolerated: usize },
    #[error("erasures span more than one repair group")]
    CrossBlockErasure,
    #[error("exhaustive search needs {needed} message classes, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, LrcError>;
