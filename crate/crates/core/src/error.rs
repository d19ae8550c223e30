use thiserror::Error;

/// Errors raised by the supercharacter engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),

    #[error("modulus mismatch: GF({0}) vs GF({1})")]
    ModulusMismatch(u32, u32),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("enumeration budget exceeded: {what} has {size} elements (cap {cap})")]
    BudgetExceeded { what: String, size: u128, cap: u64 },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("subgroup is not normalized by the acting group")]
    NotNormal,

    #[error("stabilizer precondition violated")]
    StabilizerPrecondition,

    #[error("no auxiliary prime found below {0}")]
    NoAuxiliaryPrime(u64),

    #[error("character table computation failed: {0}")]
    Dixon(String),

    #[error("axiom failure: {0}")]
    Axiom(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
