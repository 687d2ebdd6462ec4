//! Error type shared by all series-kernel operations.

use thiserror::Error;

/// Everything that can go wrong inside the series kernel.
///
/// The kernel never panics on bad mathematical input; every partial
/// operation returns one of these variants so callers can distinguish
/// user errors (mismatched universes, degenerate data) from genuine
/// precondition failures (singular Jacobians, non-unit constants).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series have different truncation degrees ({left} vs {right}); truncate explicitly first")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("series live over different variable sets; rebase explicitly first")]
    VariableMismatch,
    #[error("unknown variable index {index} (universe has {count} variables)")]
    UnknownVariable { index: usize, count: usize },
    #[error("constant term is not a unit of the coefficient ring")]
    NonUnitConstant,
    #[error("coefficient is not a unit of the coefficient ring")]
    NonUnitCoefficient,
    #[error("substitution image for variable {index} has a nonzero constant term")]
    NonzeroConstantTerm { index: usize },
    #[error("substitution must provide an image for each of the {expected} variables, got {got}")]
    IncompleteSubstitution { expected: usize, got: usize },
    #[error("implicit system is singular: the Jacobian in the unknowns is not invertible at the origin")]
    SingularJacobian,
    #[error("implicit system does not vanish at the origin")]
    NonzeroOrigin,
    #[error("series is not regular in the distinguished variable; apply regularize first")]
    NotRegular,
    #[error("series is identically zero at this truncation")]
    ZeroSeries,
    #[error("truncation degree {degree} outside the supported range 1..=250")]
    DegreeRange { degree: u32 },
    #[error("cannot lower the truncation degree below zero")]
    DegreeUnderflow,
    #[error("component count mismatch: expected {expected}, got {got}")]
    ComponentMismatch { expected: usize, got: usize },
    #[error("matrix is singular over this coefficient ring")]
    SingularMatrix,
    #[error("meromorphic element still has a pole of order {pole}")]
    UnresolvedPole { pole: u32 },
    #[error("symbolic fraction denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("symbolic values belong to different variable registries")]
    RegistryMismatch,
    #[error("malformed serialized value: {0}")]
    Deserialize(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;
