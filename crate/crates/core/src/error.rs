use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("prime {p} divides the group order {order}")]
    PrimeDividesGroupOrder { p: u64, order: usize },
    #[error("prime {p} must exceed the configured dimension bound {bound}")]
    PrimeTooSmall { p: u64, bound: u64 },
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("containment violated: {0}")]
    Containment(String),
    #[error("group order {0} exceeds the configured bound {1}")]
    OrderBound(usize, usize),
    #[error("invalid action data: {0}")]
    InvalidAction(String),
    #[error("invalid pointed data: {0}")]
    InvalidPointed(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("not semisimple: {0}")]
    NotSemisimple(String),
    #[error("splitting failed after retry budget: {0}")]
    SplitFailed(String),
    #[error("invalid coset representative set: {0}")]
    BadReps(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
