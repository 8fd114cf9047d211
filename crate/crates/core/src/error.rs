use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime in the supported range")]
    NotPrime(u32),

    #[error("prime mismatch: expected p = {expected}, found p = {found}")]
    PrimeMismatch { expected: u32, found: u32 },

    #[error("invalid Steenrod monomial: {0}")]
    InvalidMonomial(String),

    #[error("{0} is already admissible")]
    AlreadyAdmissible(String),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("Sq^{0} is indecomposable (degree is a power of two)")]
    PowerOfTwo(u32),

    #[error("operation requires p = 2")]
    RequiresTwo,

    #[error("relation {index} is not homogeneous")]
    InhomogeneousRelation { index: usize },

    #[error("relation {index} has degree 0, which would disconnect the ring")]
    DegreeZeroRelation { index: usize },

    #[error("relation {index} has degree {degree} above the cap {cap}")]
    RelationAboveCap { index: usize, degree: u32, cap: u32 },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },

    #[error("no action value for {op} on generator `{generator}`")]
    MissingActionValue { generator: String, op: String },

    #[error("invalid action entry for `{generator}`: {reason}")]
    InvalidActionEntry { generator: String, reason: String },

    #[error("unknown conditional-relation shape `{0}`")]
    UnknownShape(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("line {line}: {message}")]
    RingFile { line: usize, message: String },

    #[error("{0}")]
    Parse(#[from] crate::parse::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
