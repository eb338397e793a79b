//! Geodesic equations in Cartesian (earth-centered) coordinates.
//!
//! The geodesic condition in space says the acceleration of the unit-speed
//! curve is parallel to the surface normal, which yields a six-component
//! first-order system in `(x, y, z, dx/ds, dy/ds, dz/ds)` driven by the
//! single scalar factor `h/H` below. The system is smooth everywhere on the
//! spheroid, poles included, which is the reason this formulation is the
//! default in [`crate::solver`].
//!
//! Initial directions are built from the local moving frame `(n, p, q)`:
//! surface normal, east unit vector, and north unit vector `q = n x p`.

use crate::error::{GeodesicError, Result};
use crate::spheroid::{wrap_azimuth_deg, CartesianCoord, Ellipsoid};

/// Relative horizontal-distance threshold below which a point counts as a
/// pole for frame construction and the east vector falls back to
/// `(-sin alpha, cos alpha, 0)`.
const POLE_RHO_EPS: f64 = 1e-9;

/// State vector of the Cartesian system: position in meters and the
/// dimensionless direction (arc-length derivative of position).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub xd: f64,
    pub yd: f64,
    pub zd: f64,
}

impl CartesianState {
    pub fn new(position: CartesianCoord, direction: [f64; 3]) -> Self {
        Self {
            x: position.x,
            y: position.y,
            z: position.z,
            xd: direction[0],
            yd: direction[1],
            zd: direction[2],
        }
    }

    pub fn position(&self) -> CartesianCoord {
        CartesianCoord::new(self.x, self.y, self.z)
    }

    pub fn direction(&self) -> [f64; 3] {
        [self.xd, self.yd, self.zd]
    }

    pub fn to_array(self) -> [f64; 6] {
        [self.x, self.y, self.z, self.xd, self.yd, self.zd]
    }

    pub fn from_array(y: [f64; 6]) -> Self {
        Self {
            x: y[0],
            y: y[1],
            z: y[2],
            xd: y[3],
            yd: y[4],
            zd: y[5],
        }
    }
}

/// Right-handed orthonormal frame at a surface point: normal `n`, east `p`,
/// north `q = n x p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameVectors {
    pub n: [f64; 3],
    pub p: [f64; 3],
    pub q: [f64; 3],
}

/// The two scalars whose ratio `h/H` drives the Cartesian geodesic system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureScalars {
    /// `H = x^2 + y^2 + z^2/(1-e2)^2`, in square meters.
    pub h_pos: f64,
    /// `h = xd^2 + yd^2 + zd^2/(1-e2)`, dimensionless.
    pub h_dir: f64,
}

/// Evaluate `H` and `h` at a state.
pub fn curvature_scalars(ell: &Ellipsoid, st: &CartesianState) -> CurvatureScalars {
    let one_m_e2 = 1.0 - ell.e2();
    CurvatureScalars {
        h_pos: st.x * st.x + st.y * st.y + st.z * st.z / (one_m_e2 * one_m_e2),
        h_dir: st.xd * st.xd + st.yd * st.yd + st.zd * st.zd / one_m_e2,
    }
}

/// Raw integrand over the flat state array `[x, y, z, xd, yd, zd]`.
pub fn rhs_array(ell: &Ellipsoid, y: &[f64; 6]) -> [f64; 6] {
    let one_m_e2 = 1.0 - ell.e2();
    let h_pos = y[0] * y[0] + y[1] * y[1] + y[2] * y[2] / (one_m_e2 * one_m_e2);
    let h_dir = y[3] * y[3] + y[4] * y[4] + y[5] * y[5] / one_m_e2;
    let m = h_dir / h_pos;
    [y[3], y[4], y[5], -m * y[0], -m * y[1], -m * y[2] / one_m_e2]
}

/// Right-hand side of the six-equation geodesic system at `st`, as the
/// derivative of `(x, y, z, xd, yd, zd)` with respect to arc length. Total:
/// there are no singular points anywhere on the spheroid.
pub fn cartesian_rhs(ell: &Ellipsoid, st: &CartesianState) -> [f64; 6] {
    rhs_array(ell, &st.to_array())
}

/// Unit outward normal at an on-surface point,
/// `n = (x, y, z/(1-e2)) / sqrt(H)`.
pub fn surface_normal(ell: &Ellipsoid, c: CartesianCoord) -> [f64; 3] {
    let one_m_e2 = 1.0 - ell.e2();
    let zs = c.z / one_m_e2;
    let norm = (c.x * c.x + c.y * c.y + zs * zs).sqrt();
    [c.x / norm, c.y / norm, zs / norm]
}

/// Unit vector pointing east at `c`, `(-y, x, 0) / sqrt(x^2 + y^2)`.
///
/// On the rotation axis the horizontal projection vanishes and the east
/// direction is fixed by the caller-supplied azimuth convention instead:
/// `p = (-sin alpha, cos alpha, 0)` with `alpha = pole_azimuth` (radians).
pub fn east_vector(c: CartesianCoord, pole_azimuth: f64) -> [f64; 3] {
    let rho2 = c.x * c.x + c.y * c.y;
    let scale2 = rho2 + c.z * c.z;
    if rho2 <= POLE_RHO_EPS * POLE_RHO_EPS * scale2 {
        let (s, co) = pole_azimuth.sin_cos();
        return [-s, co, 0.0];
    }
    let rho = rho2.sqrt();
    [-c.y / rho, c.x / rho, 0.0]
}

/// Unit vector pointing north, `q = n x p` written out componentwise for
/// frames whose `p` has no vertical component. Inputs must be unit and
/// orthogonal within 1e-12.
pub fn north_vector(n: [f64; 3], p: [f64; 3]) -> Result<[f64; 3]> {
    let norm_n = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    let norm_p = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    let dot = n[0] * p[0] + n[1] * p[1] + n[2] * p[2];
    let defect = (norm_n - 1.0).abs().max((norm_p - 1.0).abs()).max(dot.abs());
    if defect > 1e-12 {
        return Err(GeodesicError::FrameNotOrthonormal { defect });
    }
    Ok([-n[2] * p[1], n[2] * p[0], n[0] * p[1] - n[1] * p[0]])
}

/// Moving frame `(n, p, q)` at an on-surface point. `pole_azimuth` (radians)
/// only matters on the rotation axis, where it selects the east direction.
pub fn frame_vectors(ell: &Ellipsoid, c: CartesianCoord, pole_azimuth: f64) -> Result<FrameVectors> {
    let n = surface_normal(ell, c);
    let p = east_vector(c, pole_azimuth);
    let q = north_vector(n, p)?;
    Ok(FrameVectors { n, p, q })
}

/// Initial state at an on-surface point `c` for a geodesic leaving with
/// azimuth `alpha0` (radians): direction `p sin(alpha0) + q cos(alpha0)`.
///
/// The input must satisfy the surface equation to within 1e-12 (normalized);
/// anything worse is rejected as off-surface.
pub fn initial_cartesian_state(
    ell: &Ellipsoid,
    c: CartesianCoord,
    alpha0: f64,
) -> Result<CartesianState> {
    let residual = ell.surface_residual(c);
    if !residual.is_finite() || residual.abs() > 1e-12 {
        return Err(GeodesicError::OffSurface { residual });
    }
    let frame = frame_vectors(ell, c, alpha0)?;
    let (sin_a, cos_a) = alpha0.sin_cos();
    let direction = [
        frame.p[0] * sin_a + frame.q[0] * cos_a,
        frame.p[1] * sin_a + frame.q[1] * cos_a,
        frame.p[2] * sin_a + frame.q[2] * cos_a,
    ];
    Ok(CartesianState::new(c, direction))
}

/// Azimuth in degrees in [0, 360) at a state, from the quadrant-resolving
/// arctangent of `(p . sigma, q . sigma)` in the local frame.
///
/// At a point on the rotation axis the frame uses the `pole_azimuth = 0`
/// convention, i.e. `p = (0, 1, 0)`.
pub fn azimuth_cartesian(ell: &Ellipsoid, st: &CartesianState) -> Result<f64> {
    let frame = frame_vectors(ell, st.position(), 0.0)?;
    let sigma = st.direction();
    let q_dot = frame.q[0] * sigma[0] + frame.q[1] * sigma[1] + frame.q[2] * sigma[2];
    let r_dot = frame.p[0] * sigma[0] + frame.p[1] * sigma[1] + frame.p[2] * sigma[2];
    if q_dot * q_dot + r_dot * r_dot < 1e-24 {
        return Err(GeodesicError::DegenerateDirection);
    }
    Ok(wrap_azimuth_deg(r_dot.atan2(q_dot).to_degrees()))
}

/// First integral of the Cartesian system, `C = x yd - y xd`, in meters;
/// equal to `sqrt(x^2 + y^2) sin(alpha)` for unit-speed tangent states.
/// Conserved along exact geodesics.
pub fn clairaut_cartesian(st: &CartesianState) -> f64 {
    st.x * st.yd - st.y * st.xd
}

/// Defect of the tangency condition,
/// `(x xd + y yd + z zd / (1 - e2)) / a`, dimensionless. Zero when the
/// direction lies in the tangent plane of the surface.
pub fn tangency_residual(ell: &Ellipsoid, st: &CartesianState) -> f64 {
    (st.x * st.xd + st.y * st.yd + st.z * st.zd / (1.0 - ell.e2())) / ell.a()
}
