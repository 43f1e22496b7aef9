use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operands live in different fields")]
    FieldMismatch,

    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("duplicate name `{0}`")]
    Duplicate(String),

    #[error("involution is not an involution: {0}")]
    NotInvolution(String),

    #[error("unknown name `{0}`")]
    Unknown(String),

    #[error("element does not belong to this poset")]
    ForeignElement,

    #[error("objects are built over different posets")]
    PosetMismatch,

    #[error("degree overflow while shifting")]
    DegreeOverflow,

    #[error("cannot compose: target of the first morphism differs from the source of the second")]
    ComposeMismatch,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("witness rejected: {0}")]
    WitnessInvalid(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("algebra is not finite dimensional: {0}")]
    NotFiniteDimensional(String),

    #[error("three or more poset elements share target vertex {0}")]
    InvolutionArity(String),

    #[error("paths do not compose: {0}")]
    EndpointMismatch(String),

    #[error("decision mismatch: {0}")]
    DecisionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
