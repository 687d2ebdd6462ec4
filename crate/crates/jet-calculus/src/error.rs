//! Errors for jet-group arithmetic and the reflection tower.

use series_core::SeriesError;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum JetError {
    #[error("jet orders differ: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },
    #[error("a jet must fix the origin (zero constant terms)")]
    NotPointed,
    #[error("the linear part of the jet is singular")]
    SingularLinearPart,
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("the reflection denominator is not a unit at this jet")]
    DegenerateDenominator,
    #[error("jet data: {0}")]
    Decode(String),
    #[error(transparent)]
    Kernel(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, JetError>;
