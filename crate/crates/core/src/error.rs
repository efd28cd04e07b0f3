use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("cannot parse scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("basis change is not invertible")]
    Singular,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("no multiplicative identity exists for this table")]
    NoUnit,
    #[error("subspace is not a {0} ideal")]
    NotAnIdeal(String),
    #[error("quotient would not be unital (ideal contains the unit)")]
    NotUnital,
    #[error("level {level} is not admissible for family {family}")]
    BadLevel { family: String, level: usize },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("module sides differ")]
    SideMismatch,
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("map does not intertwine the module actions")]
    NotAHomomorphism,
    #[error("witness rank {claimed} is not maximal: found a functional of rank {found}")]
    NotMaximalRank {
        claimed: usize,
        found: usize,
        functional: Vec<String>,
    },
    #[error("input does not match the schema: {0}")]
    Schema(String),
    #[error("extraction failed: {0}")]
    ExtractionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
