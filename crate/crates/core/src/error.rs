use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("boundary is not closed: piece {piece} ends {gap:.3e} away from the start of the next piece")]
    NonClosedCurve { piece: usize, gap: f64 },

    #[error("boundary self-intersects near edges {first} and {second}")]
    SelfIntersecting { first: usize, second: usize },

    #[error("boundary is oriented clockwise (signed area {signed_area:.6}); reverse the piece order and swap each piece's endpoints (segments: swap from/to, arcs: swap theta_start/theta_end and flip ccw)")]
    ClockwiseBoundary { signed_area: f64 },

    #[error("invalid boundary piece {piece}: {reason}")]
    InvalidPiece { piece: usize, reason: String },

    #[error("resolution {requested} too low; this boundary needs at least {required} vertices")]
    ResolutionTooLow { requested: usize, required: usize },

    #[error("offset {eps} is not below the admissible maximum {eps_max:.6}")]
    OffsetTooLarge { eps: f64, eps_max: f64 },

    #[error("chord endpoints coincide")]
    DegenerateChord,

    #[error("rejection sampling stalled: acceptance rate {rate:.2e} after {attempts} attempts")]
    SamplingStalled { rate: f64, attempts: u64 },

    #[error("size mismatch: {source_len} source points vs {target_len} target points")]
    SizeMismatch { source_len: usize, target_len: usize },

    #[error("Sinkhorn did not converge in {iterations} iterations (marginal residual {residual:.3e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("consecutive duplicate points at sample {index}; tangent undefined")]
    DegenerateTangent { index: usize },

    #[error("restriction selects {selected} pairs; at least 2 are required")]
    EmptyRestriction { selected: usize },

    #[error("no target points within the band of segment {label}")]
    EmptyBand { label: String },

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("point ({x}, {y}) lies outside the domain of the map")]
    OutOfDomain { x: f64, y: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed domain file: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
