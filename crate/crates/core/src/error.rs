use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("ring mismatch: `{0}` vs `{1}`")]
    RingMismatch(String, String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("quotient ring is not finite-dimensional")]
    InfiniteQuotient,
    #[error("system in chart {chart} is not zero-dimensional")]
    NotZeroDimensional { chart: usize },
    #[error("variety is not invariant under the automorphism")]
    NotInvariant,
    #[error("form `{0}` is not in the span of the registry")]
    NotInSpan(String),
    #[error("ratio of canonical forms is not constant modulo the ideal")]
    NonConstantRatio,
    #[error("point set is not stable under the automorphism")]
    NotStable,
    #[error("point is singular on the variety")]
    SingularPoint,
    #[error("eigenvalue {0} is not within the snapping gate of a root of unity")]
    SnapFailure(String),
    #[error("incompatible orders: {0}")]
    IncompatibleOrders(String),
    #[error("linearly dependent cubics")]
    DependentForms,
    #[error("no stable rank plateau in the tolerance window")]
    NoRankPlateau,
    #[error("cardinality mismatch: found {found}, expected {expected}")]
    CardinalityMismatch { found: usize, expected: usize },
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Numeric(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
