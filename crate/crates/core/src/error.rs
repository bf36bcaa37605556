use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge endpoint {endpoint} out of range for a graph on {n} vertices")]
    EndpointOutOfRange { endpoint: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertices {0} and {1} lie in different components")]
    DifferentComponents(usize, usize),
    #[error("graph has {n} vertices, above the configured cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("graph is not distance-hereditary (irreducible remainder on {remainder} vertices)")]
    NotDistanceHereditary { remainder: usize },
    #[error("invalid pruning sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for family `{family}`: {reason}")]
    InvalidFamilyParams { family: String, reason: String },
    #[error("inconsistent decomposition: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
