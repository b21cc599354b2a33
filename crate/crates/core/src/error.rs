use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported base ring \"{0}\": supported rings are Q and Z/<n> with n >= 2")]
    UnsupportedRing(String),

    #[error("infinite ring: idempotents are {{0,1}}")]
    InfiniteRing,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("base ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("invalid scalar \"{0}\" for base ring {1}")]
    InvalidScalar(String, String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid subalgebra: {0}")]
    InvalidSubalgebra(String),

    #[error("module is not free: {0}")]
    NotFree(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("subgroup {0} is not normal")]
    NotNormal(String),

    #[error("group is not abelian")]
    NotAbelian,

    #[error("not a product of cyclic groups: {0}")]
    NotAProduct(String),

    #[error("invalid partial action: {0}")]
    InvalidAction(String),

    #[error("not partial Galois: {0}")]
    NotGalois(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("io error: {0}")]
    Io(String),

    /// A construction that is guaranteed by theory produced data failing its
    /// own certificate.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
