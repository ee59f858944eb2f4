use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which q-Racah parameter constraint failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamViolation {
    /// One of `q`, `a`, `b` is zero.
    ZeroParameter(&'static str),
    /// `a == b`.
    EqualAB,
    /// `q^i == 1`.
    RootOfUnity { i: usize },
    /// `a b q^(i-1) == 1`.
    Resonance { i: usize },
}

impl std::fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamViolation::ZeroParameter(name) => write!(f, "{name} must be nonzero"),
            ParamViolation::EqualAB => write!(f, "a != b violated"),
            ParamViolation::RootOfUnity { i } => write!(f, "q^{i} != 1 violated"),
            ParamViolation::Resonance { i } => write!(f, "a*b*q^{} != 1 violated", *i as i64 - 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar {0:?}")]
    MalformedScalar(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("sequences have different lengths ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },
    #[error("data must contain at least one entry")]
    EmptyData,
    #[error("DegenerateData({index}): partial sums of a and b agree at index {index}")]
    DegenerateData { index: usize },
    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("polynomial of degree {degree} does not fit a basis of size {basis_len}")]
    DegreeOverflow { degree: usize, basis_len: usize },
    #[error("basis element {index} is not monic of degree {index}")]
    NonMonicBasis { index: usize },
    #[error("affine scale s must be nonzero")]
    ZeroScale,
    #[error("matrix is not strictly upper triangular")]
    NotNilpotent,
    #[error("matrix dimensions do not match: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("sequence of length {len} is too short (need at least {min})")]
    SequenceTooShort { len: usize, min: usize },
    #[error("invalid q for the requested closed form: {0}")]
    InvalidQ(String),
    #[error("invalid q-Racah parameters: {0}")]
    InvalidParams(ParamViolation),
    #[error("Laurent polynomial is not symmetric under y -> 1/y")]
    NotSymmetric,
    #[error("the extended data has equal full partial sums")]
    DegenerateExtension,
    #[error("data is not double lowering")]
    NotDoubleLowering,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
