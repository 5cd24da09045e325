use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("extension degree {0} outside supported range 1..=24")]
    BadDegree(u32),
    #[error("field of size {p}^{n} exceeds the size cap {cap}")]
    FieldTooLarge { p: u64, n: u32, cap: u64 },
    #[error("no monic irreducible polynomial of degree {n} over F_{p} was found")]
    NoIrreducible { p: u32, n: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("set contains zero, its inverse set is undefined")]
    ZeroInSet,
    #[error("{what} count {count} exceeds cap {cap}")]
    CapExceeded { what: &'static str, count: u128, cap: u128 },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("norm exponent must be positive, got {0}")]
    NonPositiveRho(f64),
    #[error("operation needs a nontrivial additive character")]
    TrivialCharacter,
    #[error("requested dimension {dim} exceeds field degree {n}")]
    BadDimension { dim: u32, n: u32 },
    #[error("weight vector is empty")]
    EmptyWeights,
}

pub type Result<T> = std::result::Result<T, Error>;
