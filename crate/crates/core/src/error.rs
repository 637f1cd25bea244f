use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VarCountMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("minor size {s} out of range for a {n}x{n} matrix")]
    MinorSizeOutOfRange { s: usize, n: usize },

    #[error("both polynomials are constant in the eliminated variable")]
    ConstantInVariable,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("degenerate pencil: determinant vanishes identically")]
    DegeneratePencil,

    #[error("matrix {index} is not symmetric")]
    NotSymmetric { index: usize },

    #[error("matrix sequence is linearly dependent")]
    LinearlyDependent,

    #[error("singular pencil: det of the linear matrix form is zero")]
    SingularPencil,

    #[error("matrix sequence is not normalized")]
    NotNormalized,

    #[error("size limit: n = {n} exceeds the supported maximum {max}")]
    SizeLimit { n: usize, max: usize },

    #[error("degree {degree} too large: {words} words exceed the budget of {budget}")]
    DegreeTooLarge { degree: usize, words: usize, budget: usize },

    #[error("truncation degree {degree} is below the floor {floor} for {count} quadrics")]
    DegreeBelowFloor { degree: usize, floor: usize, count: usize },

    #[error("quadric {index} is not central")]
    NonCentral { index: usize },

    #[error("element lies in the relation span and is not a proper lift")]
    NotAProperLift,

    #[error("relation count {found} does not match the generator count {n}")]
    RelationCountMismatch { n: usize, found: usize },

    #[error("point {0} has a nullspace of dimension at least 2 (not a (G1) point)")]
    NonG1Point(String),

    #[error("point {0} is not on the curve")]
    NotOnCurve(String),

    #[error("indeterminate image: Hadamard product of {0} vanishes")]
    IndeterminateImage(String),

    #[error("positive-dimensional locus: {0}")]
    PositiveDimensional(String),

    #[error("count exact, coordinates require extension of degree {degree}")]
    NeedsExtension { degree: usize },

    #[error("inputs are linearly dependent")]
    DependentInputs,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
