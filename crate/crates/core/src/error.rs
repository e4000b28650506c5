use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime in machine range")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("value {value} is not defined in {field}")]
    NotInField { value: String, field: String },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("polynomial is not multilinear: {0}")]
    NotMultilinear(String),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("variable collision on {0}")]
    VariableCollision(String),
    #[error("variety {variety} excludes characteristic {char}")]
    Characteristic { variety: String, char: u64 },
    #[error("not action accessible: {0}")]
    NotAccessible(String),
    #[error("degree-2 identities present in {0}; use the reduced rule")]
    QuadraticIdentity(String),
    #[error("algebra {algebra} does not satisfy identity {identity}")]
    NotInVariety { algebra: String, identity: String },
    #[error("rules are not identities of {0}")]
    InconsistentRules(String),
    #[error("element is not in the weak actor space")]
    OutsideActor,
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("unknown name {0}")]
    UnknownName(String),
    #[error("kind {kind} does not match variety {variety}")]
    KindMismatch { kind: String, variety: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
