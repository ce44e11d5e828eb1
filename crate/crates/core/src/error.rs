use alloc::string::String;

use crate::category::CategoryError;
use crate::linalg::LinalgError;

/// Errors raised by module, functor and certificate computations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("modules live over different categories")]
    CategoryMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("relation {relation} does not hold at object {object}")]
    RelationViolated { relation: usize, object: String },
    #[error("base relation {relation} does not hold")]
    BaseRelationViolated { relation: usize },
    #[error("naturality fails along arrow `{0}`")]
    NotNatural(String),
    #[error("inconclusive at cutoff {cutoff}: degree {degree} needs a longer resolution")]
    Inconclusive { degree: usize, cutoff: usize },
    #[error("the Gorenstein dimensions of the two sides disagree: {left} vs {right}")]
    InconsistentGorensteinDimension { left: usize, right: usize },
    #[error("operation needs a path category without relations; use the Gorenstein P-projectivity check instead")]
    NotPathCategory,
    #[error("search space of {size} assignments exceeds the limit {limit}")]
    SearchTooLarge { size: u128, limit: u128 },
    #[error("enumeration requires a prime field")]
    NeedsPrimeField,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
