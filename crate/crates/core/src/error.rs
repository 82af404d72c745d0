use thiserror::Error;

use crate::Word;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty generator list")]
    NoGenerators,
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("subset is not factorial: {factor} is a factor of {element} but lies outside")]
    NotFactorial { element: usize, factor: usize },
    #[error("subset is not irreducible: no w with {u}·w·{v} inside")]
    NotIrreducible { u: usize, v: usize },
    #[error("morphism is not surjective: {0} has no preimage")]
    NotSurjective(usize),
    #[error("J-class {0} is not regular")]
    NotRegular(usize),
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("presentation graph is not strongly connected")]
    NotStronglyConnected,
    #[error("shift is minimal (periodic with period word {0:?})")]
    ShiftIsMinimal(Word),
    #[error("word {0:?} is not primitive")]
    NotPrimitive(Word),
    #[error("invalid state {0}")]
    InvalidState(usize),
    #[error("semigroup is not AGGM")]
    NotAggm,
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("no compatible triangle: {0}")]
    NoCompatibleTriangle(String),
    #[error("Schützenberger representation is not faithful: elements {0} and {1} act identically")]
    NotFaithful(usize, usize),
    #[error("partial transformation semigroup is not transitive: {0} cannot reach {1}")]
    NotTransitive(usize, usize),
    #[error("map of rank {0} exceeds 1")]
    RankTooHigh(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no admissible prime found above {0}")]
    PrimeSearchFailed(usize),
    #[error("not a subshift: {0}")]
    NotASubshift(String),
    #[error("tolerance not reached; best bracket [{lower}, {upper}]")]
    ToleranceNotReached { lower: f64, upper: f64 },
    #[error("count overflow at length {0}")]
    CountOverflow(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

impl Error {
    /// Short machine-readable code used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::CapExceeded { .. } => "CapExceeded",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NoGenerators => "NoGenerators",
            Error::NotIdempotent(_) => "NotIdempotent",
            Error::NotFactorial { .. } => "NotFactorial",
            Error::NotIrreducible { .. } => "NotIrreducible",
            Error::NotSurjective(_) => "NotSurjective",
            Error::NotRegular(_) => "NotRegular",
            Error::NotHomomorphism(..) => "NotHomomorphism",
            Error::NotStronglyConnected => "NotStronglyConnected",
            Error::ShiftIsMinimal(_) => "ShiftIsMinimal",
            Error::NotPrimitive(_) => "NotPrimitive",
            Error::InvalidState(_) => "InvalidState",
            Error::NotAggm => "NotAGGM",
            Error::CheckFailed(_) => "CheckFailed",
            Error::NoCompatibleTriangle(_) => "NoCompatibleTriangle",
            Error::NotFaithful(..) => "NotFaithful",
            Error::NotTransitive(..) => "NotTransitive",
            Error::RankTooHigh(_) => "RankTooHigh",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::PrimeSearchFailed(_) => "PrimeSearchFailed",
            Error::NotASubshift(_) => "NotASubshift",
            Error::ToleranceNotReached { .. } => "ToleranceNotReached",
            Error::CountOverflow(_) => "CountOverflow",
            Error::Parse { .. } => "Parse",
            Error::NotAssociative(..) => "NotAssociative",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
