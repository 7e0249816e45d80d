use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("{op} needs a field; use the integral (Smith normal form) route for Z")]
    NeedsField { op: &'static str },

    #[error("{op} is only defined over Z, got {ring}")]
    NeedsIntegers { op: &'static str, ring: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("d_out ∘ d_in ≠ 0 at block {block}")]
    NonzeroComposition { block: String },

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("algebra dimension {dim} exceeds size cap {cap}")]
    SizeCap { dim: usize, cap: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("algebra `{0}` carries no weight assignment")]
    MissingWeights(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("prime {p} not supported: {reason}")]
    UnsupportedPrime { p: u64, reason: &'static str },

    #[error("table entry {row}: {detail}")]
    Transcription { row: String, detail: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
