//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong while building inputs, integrating, or
/// parsing reference data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeodesicError {
    #[error("invalid ellipsoid parameter {field} = {value}")]
    InvalidEllipsoid { field: &'static str, value: f64 },

    /// The geodetic formulation is singular at the poles (tan phi blows up).
    #[error("latitude {lat_deg} deg touches the polar singularity of the geodetic formulation; use the cartesian system")]
    PoleSingularity { lat_deg: f64 },

    /// Refusal guard of the geodetic solver for starts too close to a pole.
    #[error("geodetic-system start latitude {lat_deg} deg is within 0.1 deg of a pole; use the cartesian system")]
    PoleStart { lat_deg: f64 },

    #[error("direction components are degenerate; azimuth is undefined")]
    DegenerateDirection,

    #[error("frame vectors are not orthonormal (defect {defect:e})")]
    FrameNotOrthonormal { defect: f64 },

    #[error("point is off the spheroid surface (normalized residual {residual:e})")]
    OffSurface { residual: f64 },

    #[error("non-finite state component at integration step {step}")]
    NumericOverflow { step: usize },

    #[error("invalid step plan: {reason}")]
    InvalidPlan { reason: &'static str },

    #[error("invalid problem: {reason}")]
    InvalidProblem { reason: &'static str },

    #[error("test record {id}: {source}")]
    Record {
        id: usize,
        #[source]
        source: Box<GeodesicError>,
    },

    #[error("line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, GeodesicError>;
