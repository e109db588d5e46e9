use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invariant factor {0} is smaller than 2")]
    FactorTooSmall(u64),
    #[error("group order exceeds the configured maximum {max}")]
    OrderTooLarge { max: u64 },
    #[error("index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("prime {p} exceeds the configured maximum {max}")]
    PrimeTooLarge { p: u64, max: u64 },
    #[error("{ell} does not divide p - 1 = {p_minus_one}")]
    NotDivisor { ell: u64, p_minus_one: u64 },
    #[error("operands live on different groups")]
    GroupMismatch,
    #[error("set has no multiplicative structure attached")]
    MissingMulStructure,
    #[error("dilation factor must be a nonzero residue")]
    ZeroDilation,
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("energy increment stalled at iteration {iteration}: {detail}")]
    IncrementStalled { iteration: usize, detail: String },
    #[error("iteration cap {cap} exceeded")]
    IterationCap { cap: u64 },
    #[error("factor {fine} does not refine factor {coarse}")]
    NotRefinement { fine: usize, coarse: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("record failed validation: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
