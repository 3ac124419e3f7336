use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid edge ({0}, {1}) for a graph on {2} vertices")]
    InvalidEdge(usize, usize, usize),

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("malformed edge list: {0}")]
    EdgeList(String),

    #[error("empty vertex set")]
    EmptySet,

    #[error("structural mismatch: {0}")]
    Structure(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("input model does not verify: {0}")]
    UnverifiedModel(String),

    #[error("{0} is not a supported prime power")]
    UnsupportedOrder(u64),

    #[error("{0} is not prime")]
    Composite(u64),

    #[error("division by zero in field")]
    ZeroInverse,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("graph has {0} vertices; exact search supports at most 64")]
    TooLarge(usize),

    #[error("internal error: {0}")]
    Internal(String),
}
