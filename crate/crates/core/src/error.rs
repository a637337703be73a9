use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("the zero polynomial is not a valid input here")]
    ZeroPolynomial,

    #[error("constant polynomial: {0}")]
    ConstantPolynomial(String),

    #[error("declared bidegree ({declared_n}, {declared_m}) is below the actual bidegree ({actual_n}, {actual_m})")]
    BidegreeTooSmall {
        declared_n: u32,
        declared_m: u32,
        actual_n: u32,
        actual_m: u32,
    },

    #[error("normalization p(0) = 1 violated: p(0) = {re} + {im}i")]
    Normalization { re: f64, im: f64 },

    #[error("leading homogeneous value P_r(1) vanishes (|P_r(1)| = {0:e})")]
    DegenerateLeadingValue(f64),

    #[error("coefficient of degree {order} vanishes; not the vanishing order")]
    BadVanishingOrder { order: u32 },

    #[error("point outside the bound's domain: {0}")]
    DomainViolation(String),

    #[error("matrix is not a contraction: norm {0}")]
    NotAContraction(f64),

    #[error("splitting is near-defective: off-diagonal block norm {norm:e} exceeds {limit:e}")]
    NearDefectiveSplit { norm: f64, limit: f64 },

    #[error("matrix is numerically singular: {0}")]
    SingularMatrix(String),

    #[error("representation invariant check failed: {0}")]
    InvariantCheckFailed(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error means a theorem's hypothesis or an input
    /// precondition failed (as opposed to I/O or parse trouble).
    pub fn is_hypothesis_failure(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Json(_))
    }
}
