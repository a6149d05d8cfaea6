use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order {order} exceeds the configured bound {bound}")]
    SizeExceeded { order: usize, bound: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("identification does not induce an isomorphism: {0}")]
    IdentNotIsomorphism(String),
    #[error("identification uses non-central elements")]
    IdentNotCentral,
    #[error("boundary maps do not compose to zero")]
    ComplexNotExact,
    #[error("computed set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("subgroup has order {got}, expected {expected}")]
    WrongOrder { expected: usize, got: usize },
    #[error("H2 has free rank {0}; expected a finite group")]
    InfiniteHomology(usize),
    #[error("exact-sequence arithmetic failed: {0}")]
    SequenceArithmetic(String),
    #[error("value {0} does not fit the invariant representation")]
    Overflow(String),
    #[error("serialization: {0}")]
    Serialization(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
