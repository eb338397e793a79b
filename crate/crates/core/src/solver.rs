//! Direct-problem driver: build the initial state in the requested
//! coordinate system, integrate, collect precision diagnostics, and report
//! the endpoint in both representations.

use crate::cartesian::{
    self, azimuth_cartesian, clairaut_cartesian, initial_cartesian_state, tangency_residual,
    CartesianState,
};
use crate::error::{GeodesicError, Result};
use crate::geodetic::{
    self, azimuth_geodetic, clairaut_geodetic, first_fundamental_form, initial_geodetic_state,
    GeodeticState,
};
use crate::rk4::{integrate, StepPlan};
use crate::spheroid::{
    minimal_angle_diff_deg, wrap_azimuth_deg, wrap_lon_deg, CartesianCoord, Ellipsoid,
    GeodeticCoord,
};

/// Default target step length for [`select_steps`], in meters.
pub const DEFAULT_TARGET_STEP: f64 = 10_000.0;
/// Smallest step count a plan will be clamped to.
pub const MIN_STEPS: usize = 16;
/// Largest step count a plan will be clamped to.
pub const MAX_STEPS: usize = 1 << 20;

/// Geodetic-system starts closer than this to a pole are refused.
pub const GEODETIC_START_LAT_LIMIT_DEG: f64 = 89.9;
/// Geodetic-system trajectories beyond this latitude only warn.
pub const GEODETIC_WARN_LAT_DEG: f64 = 85.0;

/// Which formulation of the geodesic equations to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoordinateSystem {
    /// Four-equation system in (lat, lon). Singular at the poles.
    Geodetic,
    /// Six-equation system in earth-centered coordinates. Complete: works
    /// for the entire range of input data, poles included.
    #[default]
    Cartesian,
}

impl CoordinateSystem {
    pub fn name(&self) -> &'static str {
        match self {
            CoordinateSystem::Geodetic => "geodetic",
            CoordinateSystem::Cartesian => "cartesian",
        }
    }
}

impl std::str::FromStr for CoordinateSystem {
    type Err = GeodesicError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "geodetic" => Ok(CoordinateSystem::Geodetic),
            "cartesian" => Ok(CoordinateSystem::Cartesian),
            _ => Err(GeodesicError::InvalidProblem {
                reason: "unknown coordinate system (expected geodetic or cartesian)",
            }),
        }
    }
}

/// A direct geodesic problem: start point, start azimuth, and arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectProblem {
    /// Start point.
    pub start: GeodeticCoord,
    /// Start azimuth in degrees, clockwise from north; normalized to
    /// [0, 360) at ingestion.
    pub alpha0: f64,
    /// Arc length in meters, `>= 0`.
    pub s01: f64,
    /// Formulation to integrate.
    pub system: CoordinateSystem,
    /// Fixed step count; defaulted from [`select_steps`] when absent.
    pub steps: Option<usize>,
}

impl DirectProblem {
    pub fn new(start: GeodeticCoord, alpha0: f64, s01: f64) -> Self {
        Self {
            start,
            alpha0,
            s01,
            system: CoordinateSystem::default(),
            steps: None,
        }
    }

    pub fn with_system(mut self, system: CoordinateSystem) -> Self {
        self.system = system;
        self
    }

    pub fn with_steps(mut self, n: usize) -> Self {
        self.steps = Some(n);
        self
    }
}

/// Non-fatal conditions observed while solving.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolverWarning {
    /// A geodetic-system trajectory exceeded the latitude band where the
    /// formulation is well conditioned.
    GeodeticHighLatitude { max_abs_lat_deg: f64 },
}

impl SolverWarning {
    pub fn code(&self) -> &'static str {
        match self {
            SolverWarning::GeodeticHighLatitude { .. } => "geodetic-high-latitude",
        }
    }
}

impl std::fmt::Display for SolverWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolverWarning::GeodeticHighLatitude { max_abs_lat_deg } => write!(
                f,
                "{}: trajectory reached |lat| = {:.6} deg",
                self.code(),
                max_abs_lat_deg
            ),
        }
    }
}

/// Precision diagnostics accumulated along the trajectory.
///
/// The surface and tangency residual maxima only exist for the Cartesian
/// system; the geodetic system has no position in space to check.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    /// Clairaut constant at the start point, meters.
    pub clairaut_c0: f64,
    /// Trajectory maximum of |C(s) - C0|, meters.
    pub max_abs_delta_c: f64,
    /// Trajectory maximum of the normalized surface residual |S|.
    pub max_abs_surface_residual: Option<f64>,
    /// Trajectory maximum of the normalized tangency residual.
    pub max_abs_tangency_residual: Option<f64>,
    pub warnings: Vec<SolverWarning>,
}

/// Endpoint and azimuth of a solved direct problem.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectResult {
    pub end_geodetic: GeodeticCoord,
    pub end_cartesian: CartesianCoord,
    /// End azimuth in degrees in [0, 360).
    pub alpha1: f64,
    pub diagnostics: Diagnostics,
}

/// One sample of a traced geodesic.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSample {
    /// Arc position in meters.
    pub s: f64,
    pub position: CartesianCoord,
    pub geodetic: GeodeticCoord,
    /// Longitude continued without wrapping, degrees.
    pub lon_unwrapped: f64,
    /// Azimuth in degrees in [0, 360).
    pub alpha: f64,
    /// Clairaut drift C(s) - C0 at this sample, meters.
    pub delta_c: f64,
}

/// Step count for an arc of `s01` meters aiming at steps of `target_ds`
/// meters, clamped to `[MIN_STEPS, MAX_STEPS]`.
pub fn select_steps(s01: f64, target_ds: f64) -> usize {
    let raw = (s01 / target_ds).ceil();
    if !raw.is_finite() || raw >= MAX_STEPS as f64 {
        return MAX_STEPS;
    }
    (raw as usize).clamp(MIN_STEPS, MAX_STEPS)
}

fn validate(prob: &DirectProblem) -> Result<()> {
    if !prob.s01.is_finite() || prob.s01 < 0.0 {
        return Err(GeodesicError::InvalidProblem {
            reason: "arc length must be finite and non-negative",
        });
    }
    if !prob.start.lat.is_finite() || prob.start.lat.abs() > 90.0 {
        return Err(GeodesicError::InvalidProblem {
            reason: "start latitude must lie in [-90, 90] degrees",
        });
    }
    if !prob.start.lon.is_finite() || !prob.alpha0.is_finite() {
        return Err(GeodesicError::InvalidProblem {
            reason: "start longitude and azimuth must be finite",
        });
    }
    if prob.steps == Some(0) {
        return Err(GeodesicError::InvalidProblem {
            reason: "step count must be at least 1",
        });
    }
    Ok(())
}

fn plan_for(prob: &DirectProblem) -> Result<StepPlan> {
    let n = prob
        .steps
        .unwrap_or_else(|| select_steps(prob.s01, DEFAULT_TARGET_STEP));
    StepPlan::new(prob.s01, n)
}

/// Bring a raw integrated (lat, lon) in degrees back onto the standard
/// chart. Latitudes past a pole (only reachable by near-meridional geodetic
/// runs) are reflected onto the opposite meridian; the flag reports whether
/// that happened so the azimuth can be corrected by 180 degrees.
fn normalize_endpoint(lat_raw: f64, lon_raw: f64) -> (GeodeticCoord, bool) {
    let mut lat = lat_raw;
    let mut lon = lon_raw;
    let mut reflected = false;
    if lat > 90.0 {
        lat = 180.0 - lat;
        lon += 180.0;
        reflected = true;
    } else if lat < -90.0 {
        lat = -180.0 - lat;
        lon += 180.0;
        reflected = true;
    }
    (GeodeticCoord::new(lat, wrap_lon_deg(lon)), reflected)
}

/// Solve a direct geodesic problem.
///
/// Returns the endpoint in both coordinate representations, the end
/// azimuth, and the trajectory diagnostics. A zero arc length returns the
/// start point with `alpha1 = alpha0` without integrating.
pub fn solve_direct(ell: &Ellipsoid, prob: &DirectProblem) -> Result<DirectResult> {
    validate(prob)?;
    let alpha0 = wrap_azimuth_deg(prob.alpha0);
    match prob.system {
        CoordinateSystem::Geodetic => solve_geodetic(ell, prob, alpha0),
        CoordinateSystem::Cartesian => solve_cartesian(ell, prob, alpha0),
    }
}

fn solve_geodetic(ell: &Ellipsoid, prob: &DirectProblem, alpha0: f64) -> Result<DirectResult> {
    if prob.start.lat.abs() >= GEODETIC_START_LAT_LIMIT_DEG {
        return Err(GeodesicError::PoleStart {
            lat_deg: prob.start.lat,
        });
    }
    let st0 = initial_geodetic_state(
        ell,
        prob.start.lat.to_radians(),
        prob.start.lon.to_radians(),
        alpha0.to_radians(),
    )?;
    let c0 = clairaut_geodetic(ell, &st0);

    let final_state;
    let mut max_abs_delta_c = 0.0f64;
    let mut max_abs_phi = st0.phi.abs();
    if prob.s01 == 0.0 {
        final_state = st0;
    } else {
        let plan = plan_for(prob)?;
        let field = |y: &[f64; 4]| geodetic::rhs_array(ell, y);
        let yf = integrate(field, st0.to_array(), &plan, |_, _, y| {
            let c = first_fundamental_form(ell, y[0]).g * y[3];
            max_abs_delta_c = max_abs_delta_c.max((c - c0).abs());
            max_abs_phi = max_abs_phi.max(y[0].abs());
        })?;
        final_state = GeodeticState::from_array(yf);
    }

    let mut warnings = Vec::new();
    if max_abs_phi > GEODETIC_WARN_LAT_DEG.to_radians() {
        warnings.push(SolverWarning::GeodeticHighLatitude {
            max_abs_lat_deg: max_abs_phi.to_degrees(),
        });
    }

    let (end_geodetic, reflected) = normalize_endpoint(
        final_state.phi.to_degrees(),
        final_state.lam.to_degrees(),
    );
    let mut alpha1 = azimuth_geodetic(ell, &final_state)?;
    if reflected {
        alpha1 = wrap_azimuth_deg(alpha1 + 180.0);
    }
    let end_cartesian = ell.geodetic_to_cartesian(end_geodetic);
    Ok(DirectResult {
        end_geodetic,
        end_cartesian,
        alpha1,
        diagnostics: Diagnostics {
            clairaut_c0: c0,
            max_abs_delta_c,
            max_abs_surface_residual: None,
            max_abs_tangency_residual: None,
            warnings,
        },
    })
}

fn solve_cartesian(ell: &Ellipsoid, prob: &DirectProblem, alpha0: f64) -> Result<DirectResult> {
    let start = ell.geodetic_to_cartesian(prob.start);
    let st0 = initial_cartesian_state(ell, start, alpha0.to_radians())?;
    let c0 = clairaut_cartesian(&st0);

    let final_state;
    let mut max_abs_delta_c = 0.0f64;
    let mut max_abs_s = ell.surface_residual(start).abs();
    let mut max_abs_tangency = tangency_residual(ell, &st0).abs();
    if prob.s01 == 0.0 {
        final_state = st0;
    } else {
        let plan = plan_for(prob)?;
        let a2 = ell.a() * ell.a();
        let a2_z = a2 * (1.0 - ell.e2());
        let inv_a = 1.0 / ell.a();
        let one_m_e2 = 1.0 - ell.e2();
        let field = |y: &[f64; 6]| cartesian::rhs_array(ell, y);
        let yf = integrate(field, st0.to_array(), &plan, |_, _, y| {
            let c = y[0] * y[4] - y[1] * y[3];
            max_abs_delta_c = max_abs_delta_c.max((c - c0).abs());
            let s_res = (y[0] * y[0] + y[1] * y[1]) / a2 + y[2] * y[2] / a2_z - 1.0;
            max_abs_s = max_abs_s.max(s_res.abs());
            let tang = (y[0] * y[3] + y[1] * y[4] + y[2] * y[5] / one_m_e2) * inv_a;
            max_abs_tangency = max_abs_tangency.max(tang.abs());
        })?;
        final_state = CartesianState::from_array(yf);
    }

    let end_cartesian = final_state.position();
    let alpha1 = azimuth_cartesian(ell, &final_state)?;
    let end_geodetic = ell.cartesian_to_geodetic(end_cartesian)?;
    Ok(DirectResult {
        end_geodetic,
        end_cartesian,
        alpha1,
        diagnostics: Diagnostics {
            clairaut_c0: c0,
            max_abs_delta_c,
            max_abs_surface_residual: Some(max_abs_s),
            max_abs_tangency_residual: Some(max_abs_tangency),
            warnings: Vec::new(),
        },
    })
}

/// Trace a direct geodesic problem, returning samples at steps
/// `0, k, 2k, ...` plus the final step.
pub fn trace_direct(
    ell: &Ellipsoid,
    prob: &DirectProblem,
    every_k: usize,
) -> Result<Vec<TraceSample>> {
    validate(prob)?;
    if every_k == 0 {
        return Err(GeodesicError::InvalidProblem {
            reason: "sample stride must be at least 1",
        });
    }
    let alpha0 = wrap_azimuth_deg(prob.alpha0);
    match prob.system {
        CoordinateSystem::Geodetic => trace_geodetic(ell, prob, alpha0, every_k),
        CoordinateSystem::Cartesian => trace_cartesian(ell, prob, alpha0, every_k),
    }
}

fn trace_geodetic(
    ell: &Ellipsoid,
    prob: &DirectProblem,
    alpha0: f64,
    every_k: usize,
) -> Result<Vec<TraceSample>> {
    if prob.start.lat.abs() >= GEODETIC_START_LAT_LIMIT_DEG {
        return Err(GeodesicError::PoleStart {
            lat_deg: prob.start.lat,
        });
    }
    let st0 = initial_geodetic_state(
        ell,
        prob.start.lat.to_radians(),
        prob.start.lon.to_radians(),
        alpha0.to_radians(),
    )?;
    let c0 = clairaut_geodetic(ell, &st0);

    let mut kept: Vec<(f64, GeodeticState)> = Vec::new();
    if prob.s01 == 0.0 {
        kept.push((0.0, st0));
    } else {
        let plan = plan_for(prob)?;
        let n = plan.n;
        let field = |y: &[f64; 4]| geodetic::rhs_array(ell, y);
        integrate(field, st0.to_array(), &plan, |i, s, y| {
            if i % every_k == 0 || i == n {
                kept.push((s, GeodeticState::from_array(*y)));
            }
        })?;
    }

    kept.iter()
        .map(|&(s, st)| {
            let (geodetic, reflected) =
                normalize_endpoint(st.phi.to_degrees(), st.lam.to_degrees());
            let mut alpha = azimuth_geodetic(ell, &st)?;
            if reflected {
                alpha = wrap_azimuth_deg(alpha + 180.0);
            }
            Ok(TraceSample {
                s,
                position: ell.geodetic_to_cartesian(geodetic),
                geodetic,
                lon_unwrapped: st.lam.to_degrees(),
                alpha,
                delta_c: clairaut_geodetic(ell, &st) - c0,
            })
        })
        .collect()
}

fn trace_cartesian(
    ell: &Ellipsoid,
    prob: &DirectProblem,
    alpha0: f64,
    every_k: usize,
) -> Result<Vec<TraceSample>> {
    let start = ell.geodetic_to_cartesian(prob.start);
    let st0 = initial_cartesian_state(ell, start, alpha0.to_radians())?;
    let c0 = clairaut_cartesian(&st0);

    // longitude is unwrapped step by step; strides only affect which rows
    // are kept, not the continuity bookkeeping
    let mut kept: Vec<(f64, CartesianState, f64)> = Vec::new();
    let mut prev_lon = wrap_lon_deg(start.y.atan2(start.x).to_degrees());
    let mut unwrapped = prev_lon;
    if prob.s01 == 0.0 {
        kept.push((0.0, st0, unwrapped));
    } else {
        let plan = plan_for(prob)?;
        let n = plan.n;
        let field = |y: &[f64; 6]| cartesian::rhs_array(ell, y);
        integrate(field, st0.to_array(), &plan, |i, s, y| {
            let lon = wrap_lon_deg(y[1].atan2(y[0]).to_degrees());
            unwrapped += minimal_angle_diff_deg(lon, prev_lon);
            prev_lon = lon;
            if i % every_k == 0 || i == n {
                kept.push((s, CartesianState::from_array(*y), unwrapped));
            }
        })?;
    }

    kept.iter()
        .map(|&(s, st, lon_unwrapped)| {
            let position = st.position();
            Ok(TraceSample {
                s,
                position,
                geodetic: ell.cartesian_to_geodetic(position)?,
                lon_unwrapped,
                alpha: azimuth_cartesian(ell, &st)?,
                delta_c: clairaut_cartesian(&st) - c0,
            })
        })
        .collect()
}

/// Difference of two Cartesian positions, meters.
pub fn endpoint_distance(a: CartesianCoord, b: CartesianCoord) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    (dx * dx + dy * dy + dz * dz).sqrt()
}
