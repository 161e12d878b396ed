use thiserror::Error;

/// Errors produced by the constructions and solvers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("ground set size {0} exceeds the bitmask cap of {cap}", cap = crate::setsystem::MAX_GROUND)]
    GroundTooLarge(usize),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("partition is over [{partition}] but the family is over [{family}]")]
    PartitionMismatch { partition: usize, family: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("coloring has {colors} entries but the hypergraph has {vertices} vertices")]
    SizeMismatch { colors: usize, vertices: usize },

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("node budget exhausted; chromatic number lies in [{lower}, {upper}]")]
    BudgetExceeded { lower: usize, upper: usize },

    #[error("instance too large: {0}")]
    SizeLimit(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("verification failed: faces {faces:?} share the point {point:?}")]
    VerificationFailure { faces: Vec<Vec<usize>>, point: Vec<String> },

    #[error("moment-curve parameters must be strictly increasing")]
    NonIncreasingParameters,

    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("support has size {got}, expected {expected}")]
    WrongSupportSize { expected: usize, got: usize },

    #[error("family is not an antichain: {0:?} contains another member")]
    NotAnAntichain(Vec<usize>),

    #[error("singleton missing face {{{0}}} would leave a ghost vertex")]
    SingletonMissingFace(usize),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("first complex is not a subcomplex of the second")]
    NotASubcomplex,

    #[error("uniformity {0} is not a prime power")]
    NotPrimePower(usize),

    #[error("no valid configuration found after {0} trials")]
    ExhaustedTrials(usize),

    #[error("stretched configuration failed validation after {0} escalations")]
    EscalationFailed(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
