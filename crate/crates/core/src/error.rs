use thiserror::Error;

use crate::cevians::Vertex;

/// Errors raised by constructions in the disk model.
///
/// Most of these are not bugs: they report configurations where a
/// hyperbolic object does not exist (diverging lines, cycles that are not
/// circles) so callers can flag and skip instead of guessing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point {re}{im:+}i lies on or outside the guarded disk")]
    BoundaryPoint { re: f64, im: f64 },
    #[error("angle is undefined: a ray endpoint coincides with the vertex")]
    DegenerateAngle,
    #[error("triangle is degenerate (coincident or collinear vertices)")]
    DegenerateTriangle,
    #[error("the disk center has no inverse with respect to the absolute")]
    CenterHasNoInverse,
    #[error("input points coincide")]
    CoincidentPoints,
    #[error("cycle coefficients are degenerate (no real locus)")]
    DegenerateCycle,
    #[error("cycle lies within {margin:.3e} of a class boundary")]
    AmbiguousClass { margin: f64 },
    #[error("cycle does not meet the open disk")]
    ExteriorCycle,
    #[error("cycle is not a hyperbolic circle")]
    NotACircle,
    #[error("cycles are identical")]
    IdenticalCycles,
    #[error("no sign change found along the side opposite {0:?} before reaching the absolute")]
    BracketFailure(Vertex),
    #[error("cevian lines do not meet inside the disk")]
    DivergentCevians,
    #[error("circumcycle has no hyperbolic center")]
    NoHyperbolicCenter,
    #[error("cycles have no radical axis in the disk")]
    ConcentricCycles,
    #[error("radical axes do not meet inside the disk")]
    NoInteriorCenter,
    #[error("image falls outside the disk")]
    ImageOutsideDisk,
    #[error("inversion center coincides with the input point")]
    CenterInput,
    #[error("power is unbounded: cycle passes through the point's absolute inverse")]
    UnboundedPower,
    #[error("homothetic center does not exist inside the disk")]
    MissingCenter,
    #[error("sign pattern must be all positive or exactly two negative")]
    InvalidSignPattern,
    #[error("unknown configuration flag")]
    UnknownFlag,
    #[error("configuration is degenerate: {0}")]
    DegenerateConfiguration(&'static str),
}

pub type Result<T> = std::result::Result<T, GeomError>;
