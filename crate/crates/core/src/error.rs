//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {0} is outside the supported range 2..=256")]
    FieldTooLarge(u64),

    #[error("extension GF({q}^{m}) is too large for a 64-bit element encoding")]
    ExtensionTooLarge { q: u32, m: usize },

    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    NotIrreducible(usize),

    #[error("evaluation points are linearly dependent over the base field")]
    DependentPoints,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("element {value} is not in a field of order {q}")]
    ElementOutOfRange { value: u64, q: u32 },

    #[error("enumeration of {size} elements exceeds the cap of {cap}")]
    EnumerationCap { size: String, cap: u64 },

    #[error("matrix is not supported on the Ferrers diagram")]
    OutsideDiagram,

    #[error("missing A_q({n},{d},{k}) term; supply it explicitly")]
    MissingAqTerm { n: usize, d: usize, k: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameters(msg.into()))
}
