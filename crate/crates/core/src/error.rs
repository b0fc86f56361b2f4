use thiserror::Error;

/// Errors raised by lattice, series and divisor computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),

    #[error("singular Gram matrix")]
    SingularGram,

    #[error("lattice is not positive definite")]
    NotPositiveDefinite,

    #[error("invalid glue code: {0}")]
    InvalidGlue(String),

    #[error("vector is not isotropic")]
    NotIsotropic,

    #[error("vector is not primitive in the lattice")]
    NotPrimitive,

    #[error("coset has no lift orthogonal to the isotropic line")]
    NoLift,

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("series has zero leading coefficient")]
    ZeroLeadingCoefficient,

    #[error("unsupported Eisenstein weight {0}")]
    UnsupportedWeight(u32),

    #[error("series gradings differ")]
    GradingMismatch,

    #[error("exponent has nonpositive grading")]
    NonPositiveGrading,

    #[error("signature {sig8} mod 8 is inconsistent with the discriminant form")]
    SignatureMismatch { sig8: i64 },

    #[error("point lies on a wall")]
    OnWall,

    #[error("point is not in the chosen light cone component")]
    OutsideCone,

    #[error("chamber does not match the walls of the form")]
    ChamberMismatch,

    #[error("Weyl vector is not in the exponent lattice")]
    WeylNotIntegral,

    #[error("form is not integral: {0}")]
    NonIntegral(String),

    #[error("incompatible discriminant data: {0}")]
    IncompatibleDiscriminant(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("missing value: {0}")]
    MissingValue(String),

    #[error("theta identity violated: {0}")]
    ThetaTrick(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
