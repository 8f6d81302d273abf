use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("quotient is not finite-dimensional (no pure power of `{0}` among leading terms)")]
    NotFiniteDimensional(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("relations generate the unit ideal")]
    TrivialRing,
    #[error("relation `{0}` does not map to zero")]
    RelationNotKilled(String),
    #[error("not an algebra map: {0}")]
    NotAnAlgebraMap(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a module homomorphism: {0}")]
    NotAModuleMap(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("sequence is not exact at spot {spot}")]
    InexactSequence { spot: usize },
    #[error("short exact sequence is not exact: {0}")]
    InexactInput(String),
    #[error("extension ends do not match: {0}")]
    Mismatch(String),
    #[error("resolution too short: need length {needed}, have {have}")]
    ResolutionTooShort { needed: usize, have: usize },
    #[error("not a cocycle")]
    NotACocycle,
    #[error("2-cochain is not symmetric")]
    NotSymmetric,
    #[error("cocycle identity fails at basis triple ({0}, {1}, {2})")]
    CocycleIdentityFails(usize, usize, usize),
    #[error("infinitesimal extension invariant fails: {0}")]
    InvalidExtension(String),
    #[error("homomorphism on the ideal is not linear over the ring or does not kill its square")]
    NotLinearOnConormal,
    #[error("relation `{0}` has a constant term; the presentation must be augmented")]
    ConstantTermInRelation(String),
    #[error("kernel module has no distinguished cyclic generator")]
    KernelNotCyclic,
    #[error("size budget exceeded: need {needed} cells, budget {budget}")]
    SizeBudgetExceeded { needed: usize, budget: usize },
}
