use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
    #[error("variable x{index} at position {position} exceeds the variable count {n}")]
    VariableOutOfRange { position: usize, index: usize, n: usize },
    #[error("expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero polynomial has empty Newton polyhedron")]
    ZeroPolynomial,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("face is not a face of the Newton polytope of this polynomial")]
    NotAFace,
    #[error("direction vector must be nonzero")]
    ZeroDirection,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("missing prerequisite: {0}")]
    MissingPrerequisite(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
