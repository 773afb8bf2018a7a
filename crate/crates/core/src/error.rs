use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition `{input}`: {reason}")]
    InvalidPartition { input: String, reason: String },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: u32, found: u32 },

    #[error("stirling2({k}, {j}) is out of range; need 1 <= j <= k")]
    StirlingRange { k: u32, j: u32 },

    #[error("deg1 is undefined for the zero element")]
    ZeroElement,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomial does not satisfy R(X) = R(-X-1)")]
    NotEven,

    #[error("not supersymmetric: contains the even power sum p_{0}")]
    NotSupersymmetric(u32),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("malformed element: {0}")]
    Malformed(String),
}
