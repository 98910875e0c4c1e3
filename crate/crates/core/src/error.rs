use thiserror::Error;

/// Errors raised by the library.
///
/// Most variants correspond to a violated precondition of a single operation;
/// `InvariantViolation` is reserved for cross-checks that can only fail on a
/// bug or on inconsistent input data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidParams(String),
    #[error("elements belong to different fields")]
    ParamsMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element has negative valuation {0}")]
    NegativeValuation(String),

    #[error("no finite line in polygon input")]
    EmptyInput,
    #[error("lambda = {0} lies outside the polygon domain")]
    OutOfDomain(String),
    #[error("polygon is not invertible: {0}")]
    NotInvertible(String),

    #[error("constant coefficient is nonzero (coordinates are not compatible)")]
    NotCompatible,
    #[error("leading coefficient is not a unit (valuation {0})")]
    NotFinite(String),
    #[error("coefficient of T^{0} is a unit below the leading degree")]
    BoundaryZeros(usize),
    #[error("point is not in the open unit disc (valuation {0})")]
    NotInDisc(String),
    #[error("lambda = {0} is not in the value group (1/{1})Z")]
    LambdaNotInValueGroup(String, u32),
    #[error("lambda must be positive and finite, got {0}")]
    BadLambda(String),

    #[error("morphism is not weakly {0}-radial on the probe set")]
    NotWeaklyNRadial(usize),
    #[error("theta_{0} vanishes at this point (no n-th break)")]
    ThetaIsZero(usize),
    #[error("morphism is not certified radial")]
    NotCertified,

    #[error("root {index} does not map to the fiber center")]
    RootMismatch { index: usize },
    #[error("fiber has the wrong roots: {0}")]
    WrongCount(String),
    #[error("root {index} lies outside the open unit disc")]
    RootOutsideDisc { index: usize },
    #[error("Newton iteration did not reach precision {0}")]
    NoConvergence(String),
    #[error("at least two fibers are required, got {0}")]
    InsufficientFibers(usize),

    #[error("count function inconsistent with degree: {0}")]
    InconsistentCount(String),
    #[error("count function is not realizable by a radial morphism: {0}")]
    NotRealizable(String),

    #[error("polynomial is not integral (coefficient of T^{0} has negative valuation)")]
    NotIntegral(usize),
    #[error("reduction drops the degree (leading coefficient has positive valuation)")]
    DegreeDrop,
    #[error("reduced polynomial is constant")]
    ConstantInput,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
