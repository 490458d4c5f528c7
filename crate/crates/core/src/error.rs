use alloc::string::String;

/// Errors raised by geometry validation, estimators and constructions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("obstacle #{index}: {reason}")]
    InvalidObstacle { index: usize, reason: String },
    #[error("base point ({x}, {y}) is not inside the domain")]
    BasePointCovered { x: f64, y: f64 },
    #[error("start point ({x}, {y}) is not inside the domain")]
    StartOutsideDomain { x: f64, y: f64 },
    #[error("Green function pole: z and w coincide")]
    Pole,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("profile exhausted: every entry is statistically indistinguishable from zero")]
    ProfileExhausted,
    #[error("profile has {got} usable entries, at least {needed} required")]
    InsufficientEntries { needed: usize, got: usize },
    #[error("invalid bracket: {0}")]
    InvalidBracket(String),
    #[error("domain has no unbounded obstacle; its hull is the whole plane")]
    HullIsPlane,
    #[error("domain is not in class D: {0}")]
    NotClassD(String),
    #[error(
        "width search failed at radius {radius}: omega = {mean} ± {stderr} below target {target} (last width {width})"
    )]
    StageFailure {
        radius: f64,
        width: f64,
        mean: f64,
        stderr: f64,
        target: f64,
    },
    #[error("doubling search exceeded {limit} without meeting its condition")]
    DoublingExceeded { limit: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
