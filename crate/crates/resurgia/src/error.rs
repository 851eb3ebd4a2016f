use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: at least one point is required")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative coordinate in input point")]
    NegativeCoordinate,
    #[error("scale factor must be positive")]
    NonpositiveScale,
    #[error("zero vector is not a valid direction")]
    ZeroVector,
    #[error("halfspace normal must be nonzero and nonnegative")]
    BadHalfspace,
    #[error("operation requires a nonempty polyhedron")]
    EmptyPolyhedron,
    #[error("ideal is the zero ideal")]
    ZeroIdeal,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("ideal is not squarefree")]
    NotSquarefree,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("family index must be at least 1")]
    IndexZero,
    #[error("family supports membership queries only, not generator extraction")]
    MembershipOnlyFamily,
    #[error("no valuation data supplied")]
    NoValuationData,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
