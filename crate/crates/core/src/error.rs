use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different Weil algebras")]
    AlgebraMismatch,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (must be below {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("algebra is infinite-dimensional: no degree cap and generator `{generator}` has no pure-power relation")]
    InfiniteDimensional { generator: String },

    #[error("relation ideal is not contained in the maximal ideal (constant relation)")]
    IdealNotProper,

    #[error("structure constants are not commutative on basis pair ({i}, {j})")]
    NotCommutative { i: usize, j: usize },

    #[error("structure constants are not associative on basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("basis element 0 is not a two-sided unit (fails on basis element {i})")]
    UnitLaw { i: usize },

    #[error("span of non-unit basis is not an ideal: product of basis pair ({i}, {j}) has a unit component")]
    NotIdeal { i: usize, j: usize },

    #[error("non-nilpotent non-unit part: basis element {index} is not nilpotent")]
    NotNilpotent { index: usize },

    #[error("malformed algebra table: {0}")]
    MalformedTable(String),

    #[error("element is not invertible (it lies in the maximal ideal)")]
    NotInvertible,

    #[error("matrix is not invertible over the algebra (augmentation image is singular)")]
    SingularMatrix,

    #[error("form degree {degree} is invalid here ({reason})")]
    FormDegree { degree: usize, reason: &'static str },

    #[error("interior product needs a vector field, got an operator with non-zero multiplier")]
    NotVectorField,

    #[error("symplectic structures need an even dimension, got {0}")]
    OddDimension(usize),

    #[error("2-form is degenerate at the origin {origin}")]
    DegenerateForm { origin: String },

    #[error("2-form has a non-constant or non-invertible Pfaffian; only pointwise Hamiltonian solves are available")]
    NeedsPointwise,

    #[error("lcs compatibility fails: d(omega) + alpha^omega has non-zero component {component}")]
    LcsCompatibility { component: String },

    #[error("matrix is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("empty sample set rejected")]
    EmptySamples,

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Semantic(String),
}
