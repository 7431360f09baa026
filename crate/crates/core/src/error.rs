use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no data")]
    NoData,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    /// The profile reaches level one, so the acceptance family would accept
    /// everything and the risk would be minus infinity.
    #[error("infeasible profile: sup Λ = {sup} ≥ 1: Φ would be −∞")]
    InfeasibleProfile { sup: f64 },

    #[error("probe {0} is not a continuity point")]
    NotContinuityPoint(f64),

    #[error("tilde family requires decreasing Λ")]
    TildeRequiresDecreasing,

    #[error("tilde formulation requires a continuous Λ")]
    TildeRequiresContinuous,

    #[error("requires continuous distribution")]
    RequiresContinuous,

    #[error("{0} outside range of f")]
    OutsideRange(f64),

    #[error("not invertible at integral value {0}")]
    NotInvertible(f64),

    #[error("widen search bracket: {0}")]
    Bracket(String),

    #[error("no feasible candidate")]
    NoFeasibleCandidate,

    #[error("dual variable out of range")]
    DualOutOfRange,

    #[error("level m = {0} outside the family table")]
    OutsideTable(f64),

    #[error("family member not nondecreasing")]
    MemberNotNondecreasing,

    #[error("no closed-form dual function for {0}")]
    NoDualFunction(&'static str),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn func(msg: impl Into<String>) -> Self {
        Error::InvalidFunction(msg.into())
    }
}
