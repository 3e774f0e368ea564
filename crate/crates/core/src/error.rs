use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("checked integer arithmetic overflowed")]
    ArithmeticOverflow,

    #[error("order {0} is outside the 32-bit range")]
    OrderOutOfRange(i64),

    #[error("degree entries must be at least 1 (found {0})")]
    InvalidDegree(u64),

    #[error("degree vector inconsistent with group order: {0}")]
    InconsistentGroupOrder(String),

    #[error("rank must be at least 1")]
    EmptyVector,

    #[error("element {0:?} is not holomorphic (negative order)")]
    NotInHol(Vec<u64>),

    #[error("the zero element has no irreducibility status")]
    ZeroElement,

    #[error("pivot index {index} has order {order}, expected a positive order")]
    NonpositivePivot { index: usize, order: i64 },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("indices must differ (both are {0})")]
    EqualIndices(usize),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("rank {0} is too small; at least 2 is required")]
    RankTooSmall(usize),

    #[error("no integer relation among the basis elements")]
    NoRelation,

    #[error("hilbert engines disagree for orders {orders:?}")]
    EngineMismatch { orders: Vec<i64> },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("enumeration of {requested} instances exceeds the cap of {cap}")]
    CapExceeded { requested: u128, cap: u64 },

    #[error("records come from different plans: {0}")]
    MixedPlans(String),

    #[error("instance {orders:?} failed: {source}")]
    Instance {
        orders: Vec<i64>,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed document: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
