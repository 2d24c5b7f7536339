use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polar angle undefined at the origin (r = {r:e})")]
    DegenerateOrigin { r: f64 },

    #[error("singular input: {what} = {value:e} is below the axis cutoff")]
    Singular { what: &'static str, value: f64 },

    #[error("Bohr radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("dispersion relation violated: relative defect {defect:e} exceeds {tolerance:e}")]
    DispersionViolation { defect: f64, tolerance: f64 },

    #[error("mass term violates M M‡ = -m_e^2 (defect {defect:e})")]
    InvalidMassTerm { defect: f64 },

    #[error("degenerate grid: axis {axis} has {nodes} nodes, at least 3 required")]
    DegenerateGrid { axis: usize, nodes: usize },

    #[error("region must lie at r > 0, got r = {0}")]
    RegionOnAxis(f64),

    #[error("grid spacing {h:e} too coarse: |mu| h = {product:e} must be below 0.1")]
    SpacingTooCoarse { h: f64, product: f64 },

    #[error("sample point at distance {distance} lies within 10h = {limit} of the source")]
    TooCloseToSource { distance: f64, limit: f64 },

    #[error("supercritical coupling: g / n = {ratio} >= 1, no bound circular orbit")]
    SupercriticalCoupling { ratio: f64 },

    #[error("principal number must be >= 1, got {0}")]
    InvalidPrincipal(i64),

    #[error("velocity {0} outside the open interval (0, 1)")]
    VelocityOutOfRange(f64),

    #[error("selection rule: total angular momentum {0} must be >= 1")]
    SelectionRule(i64),

    #[error("Monte Carlo estimate requested with zero samples")]
    NoSamples,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
