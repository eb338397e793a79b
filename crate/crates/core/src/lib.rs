//! Numerical solver for the direct geodesic problem on an oblate spheroid.
//!
//! Given a start point, a start azimuth, and an arc length, the endpoint and
//! end azimuth are obtained by integrating the geodesic differential
//! equations as an initial value problem with a fixed-step fourth-order
//! Runge-Kutta scheme, in either of two formulations:
//!
//! * [`geodetic`]: four equations in (lat, lon) and their arc-length
//!   derivatives; compact but singular at the poles;
//! * [`cartesian`]: six equations in earth-centered coordinates; complete
//!   over the whole surface, poles included, and the default.
//!
//! The Clairaut constant of the geodesic is not assumed: it is recomputed
//! along the trajectory, and its drift, together with the implicit-surface
//! and tangency residuals of the Cartesian system, gives a built-in measure
//! of integration precision. The [`testset`] module benchmarks the solver
//! against reference files in the GeographicLib `GeodTest` layout.

pub mod cartesian;
pub mod error;
pub mod geodetic;
pub mod rk4;
pub mod solver;
pub mod spheroid;
pub mod testset;

pub use error::{GeodesicError, Result};
pub use solver::{
    solve_direct, trace_direct, CoordinateSystem, Diagnostics, DirectProblem, DirectResult,
    SolverWarning, TraceSample,
};
pub use spheroid::{CartesianCoord, Ellipsoid, GeodeticCoord};
