use thiserror::Error;

/// Domain errors raised by the lattice toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Gram matrix is not square and symmetric")]
    NotSymmetric,
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("lattice is not even: diagonal entry {0} is odd")]
    NotEven(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis rows are linearly dependent")]
    DependentRows,
    #[error("zero vector has no divisibility")]
    ZeroVector,
    #[error("sublattice is not saturated in its ambient lattice")]
    NotSaturated,
    #[error("glue element {0} is not isotropic")]
    NotIsotropic(String),
    #[error("glue projection onto the {0} summand is not injective")]
    GlueNotInjective(&'static str),
    #[error("overlattice is not even or not integral")]
    OverlatticeNotEven,
    #[error("finite group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: u64, bound: u64 },
    #[error("invalid finite quadratic form: {0}")]
    InvalidForm(String),
    #[error("finite quadratic form is degenerate")]
    DegenerateForm,
    #[error("element or subgroup does not belong to the form")]
    NotInGroup,
    #[error("signature obstruction: {0}")]
    SignatureObstruction(String),
    #[error("target lattice is indefinite; an explicit search box is required")]
    IndefiniteWithoutBox,
    #[error("matrix is not an isometric involution: {0}")]
    NotInvolution(String),
    #[error("involution does not extend to the ambient lattice (glue obstruction)")]
    ExtensionObstruction,
    #[error("action on the discriminant group is neither +1 nor -1")]
    ActionNotPlusMinus,
    #[error("neither the invariant nor the coinvariant lattice is 2-elementary")]
    NeitherTwoElementary,
    #[error("no discriminant case applies: {0}")]
    NoCaseMatch(String),
    #[error("lattice is not hyperbolic")]
    NotHyperbolic,
    #[error("twisted vector is not integral")]
    NonIntegralTwist,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
