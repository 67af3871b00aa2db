use thiserror::Error;

/// A syntax error in one of the textual formats, with the byte offset where
/// the parser gave up.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("generator index {0} is out of range (indices run from 1 to {max})", max = crate::exterior::MAX_GENERATORS)]
    GeneratorOutOfRange(u64),

    #[error("invalid grading: {0}")]
    InvalidGrading(String),

    #[error("a 2-induced grading needs two distinct degrees, got m = n = {0}")]
    EqualDegrees(i64),

    #[error("expected m < 0 < n, got m = {m}, n = {n}")]
    SignPrecondition { m: i64, n: i64 },

    #[error("gcd({m}, {n}) = {gcd}, expected 1")]
    NotCoprime { m: i64, n: i64, gcd: u64 },

    #[error("polynomial is not multilinear: {0}")]
    NotMultilinear(String),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("degree {0} does not fit in 32 bits")]
    DegreeOverflow(i128),

    #[error("polynomial is graded by {poly}, grading is by {spec}")]
    GroupMismatch { poly: String, spec: String },

    #[error("no value supplied for variable {0}")]
    MissingSubstitution(String),

    #[error("value for {variable} is not homogeneous")]
    Inhomogeneous { variable: String },

    #[error("value for {variable} has degree {found}, expected {expected}")]
    DegreeMismatch {
        variable: String,
        expected: i64,
        found: i64,
    },

    #[error("{generators} generators cannot host {variables} variables; the check would be vacuous")]
    VacuousConfig { generators: u32, variables: usize },

    #[error("grading is not of full support")]
    NotFullSupport,

    #[error("grading is not central: {0}")]
    NotCentral(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
