use thiserror::Error;

/// Errors shared across the crate. Every operation is total unless it lists
/// one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero vector has no primitive representative")]
    ZeroVector,

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("weight pairs negatively with a ray, so it is not in the dual cone")]
    WeightNotInDual,

    #[error("operation requires a strongly convex cone, but this one contains a line")]
    HasLineality,

    #[error("enumeration requires a monoid with trivial unit group")]
    NonPointedMonoid,

    #[error("weight is not an element of the monoid")]
    WeightOutsideMonoid,

    #[error("cone is not a member of the fan")]
    ConeNotInFan,

    #[error("subdivision ray lies outside the support of the fan")]
    RayOutsideSupport,

    #[error("subdivision ray must be primitive")]
    NonPrimitiveRay,

    #[error("weight of the domain does not match the requested weight")]
    WeightMismatch,

    #[error("second cone is not a face of the first")]
    NotAFace,

    #[error("residue comparison is only defined over smooth cones")]
    NonSmoothCone,

    #[error("homology degree {requested} exceeds the configured cap {max}")]
    DegreeTooLarge { requested: usize, max: usize },

    #[error("decomposition enumeration exceeded the budget of {budget} tuples")]
    BudgetExceeded { budget: usize },

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("malformed blow-up square: {0}")]
    MalformedSquare(String),

    #[error("weight lies outside the dual cone")]
    WeightOutsideDual,

    #[error("dilation chain did not stabilize within the given sequence; dims seen: {chain:?}")]
    NotStabilized { chain: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;
