//! Error type shared by every engine layer.

use crate::ring::MetricError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("intermediate of degree {degree} exceeds the hard cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("no substitution for generator {0}")]
    MissingSubstitution(String),
    #[error("no substitution available for {0}")]
    NoSubstitutionAvailable(String),
    #[error("wedge monomial {0} is not expressible in the exterior basis")]
    NonReducible(String),
    #[error("element is not in the kernel of the counit")]
    NotInKernel,
    #[error("commutator with P0 is not momentum valued for {0}")]
    NotMomentumValued(String),
    #[error("variant {variant} requires g00 = 0 but the metric has g00 = {g00}")]
    MetricVariantMismatch { variant: String, g00: String },
    #[error("unknown variant {0}")]
    UnknownVariant(String),
    #[error("unknown bracket pair ({0}, {1})")]
    UnknownPair(String, String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError { line: usize, column: usize, message: String },
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
