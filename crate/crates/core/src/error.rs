use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inverse not finitely supported")]
    NotFinitelySupported,
    #[error("specialization at pole")]
    SpecializationAtPole,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("not in M^J: {0}")]
    NotInMJ(String),
    #[error("determinant is not 1")]
    DeterminantNotOne,
    #[error("scalar operator constant term is not 1")]
    ConstantTermNotOne,
    #[error("empty sequence")]
    EmptySequence,
    #[error("index order violation: i = {i} > j = {j}; use antisymmetry")]
    IndexOrder { i: usize, j: usize },
    #[error("r-matrix violates phi_n + phi_-n = 1 at n = {0}")]
    ClassConstraint(i64),
    #[error("non-monomial point")]
    NonMonomialPoint,
    #[error("undeclared inverse of generator {0}")]
    UndeclaredInverse(String),
    #[error("odd N required (got {0})")]
    OddNRequired(usize),
    #[error("N out of range: {0}")]
    NOutOfRange(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
