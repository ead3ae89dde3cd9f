use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order must be positive")]
    ZeroOrder,

    #[error("table does not define a group: {0}")]
    NotAGroup(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("closure exceeded the bound of {limit} elements")]
    ClosureBound { limit: usize },

    #[error("{what} needs a group of order at most {limit}, got {order}")]
    OrderBound {
        what: &'static str,
        order: usize,
        limit: usize,
    },

    #[error("action is not a homomorphism into the automorphism group: {0}")]
    InvalidAction(String),

    #[error("orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("unknown group `{name}`{}", suggestion.as_ref().map(|s| format!(" (did you mean `{s}`?)")).unwrap_or_default())]
    UnknownGroup {
        name: String,
        suggestion: Option<String>,
    },

    #[error("the catalog does not cover all groups of order {0}")]
    UncoveredOrder(usize),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
