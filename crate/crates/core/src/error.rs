use thiserror::Error;

pub type Result<T, E = CdpError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdpError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("the zero vector has no primitive representative")]
    ZeroVector,

    #[error("vector {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),

    #[error("point {0} lies outside the base polytope")]
    OutsideBase(String),

    #[error("the origin is not an interior point of the polytope")]
    OriginNotInterior,

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("not Fano: {0}")]
    NotFano(String),

    #[error("invalid CDP: {0}")]
    InvalidCdp(String),

    #[error("bound violated: {0}")]
    BoundViolation(String),

    #[error("integer overflow in exact kernel")]
    Overflow,

    #[error("{0}")]
    Parse(String),
}

impl From<serde_json::Error> for CdpError {
    fn from(e: serde_json::Error) -> Self {
        CdpError::Parse(e.to_string())
    }
}
