use series_core::SeriesError;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SurfaceError {
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },

    #[error("the defining equation is not real: conjugation does not fix it")]
    NotReal,

    #[error("the defining function does not vanish at the origin")]
    NotThroughOrigin,

    #[error("the base point does not lie on the hypersurface (exact membership failed)")]
    NotOnSurface,

    #[error("degenerate gradient: no complex direction is graph-solvable at the point")]
    DegenerateGradient,

    #[error("the normalizing change of coordinates is inconsistent at order {order}")]
    NormalizationInconsistent { order: u32 },

    #[error("truncation degree {degree} is too small for this operation")]
    DegreeTooSmall { degree: u32 },

    #[error("wrong number of point coordinates: expected {expected}, got {got}")]
    PointShape { expected: usize, got: usize },

    #[error(transparent)]
    Kernel(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, SurfaceError>;
