use thiserror::Error;

/// Errors produced by the geometry kernel and the hydrostatics layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("degenerate body")]
    DegenerateBody,

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("empty section")]
    EmptySection,

    #[error("axis is not orthogonal to the cutting direction")]
    AxisNotInSectionPlane,

    #[error("density out of range")]
    DensityOutOfRange,

    #[error("degenerate buoyancy line")]
    DegenerateBuoyancyLine,

    #[error("curvature undefined at this resolution")]
    CurvatureUndefined,

    #[error("requires central symmetry")]
    RequiresCentralSymmetry,

    #[error("non-convex profile")]
    NonConvexProfile,

    #[error("curve generation failed: {0}")]
    CurveGeneration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("body file error: {0}")]
    BodyFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
