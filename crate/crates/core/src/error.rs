use thiserror::Error;

use crate::moments::FeasibilityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("invalid circle family: {0}")]
    InvalidFamily(String),
    #[error("radii must be sorted ascending")]
    UnsortedRadii,
    #[error("invalid tolerance: relative_eps={relative_eps}, absolute_floor={absolute_floor}")]
    InvalidTolerance {
        relative_eps: f64,
        absolute_floor: f64,
    },
    #[error("side lengths ({0}, {1}, {2}) violate the triangle inequality")]
    TriangleInequalityViolated(f64, f64, f64),
    #[error("coincident circles have infinitely many common points")]
    CoincidentCircles,
    #[error("moment order m={m} outside 1..={max}")]
    InvalidMomentOrder { m: usize, max: usize },
    #[error("negative discriminant {discriminant}: no real circumradii")]
    InfeasibleMoments { discriminant: f64 },
    #[error("polygons have different vertex counts ({0} and {1})")]
    MismatchedOrder(usize, usize),
    #[error("auxiliary circles coincide: every point on them is a valid center")]
    CoincidentAuxiliaryCircles,
    #[error("point is not on the auxiliary circle around the second center (gap {gap})")]
    NotACandidateCenter { gap: f64 },
    #[error("polygons share no vertex")]
    NoSharedVertex,
    #[error("outer/inner square sums differ by {gap}")]
    SumConditionViolated { gap: f64 },
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("circle family admits no polygon pair")]
    InfeasibleFamily(Box<FeasibilityReport>),
    #[error("no phase of polygon {polygon} matches the radii (best residual {best_residual})")]
    PhaseSearchFailed { polygon: usize, best_residual: f64 },
    #[error("angle sweep needs at least 360 grid cells, got {0}")]
    GridTooCoarse(usize),
}
