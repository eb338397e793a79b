//! Geodesic equations in geodetic coordinates (latitude, longitude).
//!
//! The unknown curve is `phi(s), lam(s)` parametrized by arc length. The
//! second-order geodesic equations reduce to a four-component first-order
//! system in `(phi, dphi/ds, lam, dlam/ds)` whose coefficients are the three
//! non-zero Christoffel symbols of the surface metric. The formulation is
//! singular at the poles (`tan phi`), which callers must avoid; the
//! Cartesian formulation in [`crate::cartesian`] has no such restriction.

use crate::error::{GeodesicError, Result};
use crate::spheroid::{wrap_azimuth_deg, Ellipsoid};

use std::f64::consts::FRAC_PI_2;

/// State vector of the geodetic system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodeticState {
    /// Geodetic latitude in radians.
    pub phi: f64,
    /// d(phi)/ds in radians per meter.
    pub dphi: f64,
    /// Geodetic longitude in radians (not wrapped during integration).
    pub lam: f64,
    /// d(lam)/ds in radians per meter.
    pub dlam: f64,
}

impl GeodeticState {
    pub fn to_array(self) -> [f64; 4] {
        [self.phi, self.dphi, self.lam, self.dlam]
    }

    pub fn from_array(y: [f64; 4]) -> Self {
        Self {
            phi: y[0],
            dphi: y[1],
            lam: y[2],
            dlam: y[3],
        }
    }
}

/// First fundamental form coefficients of the (phi, lam) parametrization,
/// all in square meters. `f` is identically zero (parallels and meridians
/// are orthogonal).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricCoefficients {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

/// The three non-zero Christoffel symbols of the parametrization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelTriple {
    /// Coefficient of (dphi/ds)^2 in the phi equation.
    pub g111: f64,
    /// Coefficient of (dlam/ds)^2 in the phi equation.
    pub g122: f64,
    /// Coefficient of (dphi/ds)(dlam/ds) in the lam equation.
    pub g212: f64,
}

/// Metric coefficients at latitude `phi` (radians):
/// `E = a^2 (1-e2)^2 / w^6`, `F = 0`, `G = a^2 cos^2 phi / w^2` with
/// `w^2 = 1 - e2 sin^2 phi`.
pub fn first_fundamental_form(ell: &Ellipsoid, phi: f64) -> MetricCoefficients {
    let (s, c) = phi.sin_cos();
    let w2 = 1.0 - ell.e2() * s * s;
    let a2 = ell.a() * ell.a();
    let one_m_e2 = 1.0 - ell.e2();
    MetricCoefficients {
        e: a2 * one_m_e2 * one_m_e2 / (w2 * w2 * w2),
        f: 0.0,
        g: a2 * c * c / w2,
    }
}

pub(crate) fn christoffel_unchecked(ell: &Ellipsoid, phi: f64) -> ChristoffelTriple {
    let s = phi.sin();
    let w2 = 1.0 - ell.e2() * s * s;
    let sin2phi = (2.0 * phi).sin();
    let one_m_e2 = 1.0 - ell.e2();
    ChristoffelTriple {
        g111: 3.0 * ell.e2() * sin2phi / (2.0 * w2),
        g122: w2 * sin2phi / (2.0 * one_m_e2),
        g212: -one_m_e2 * phi.tan() / w2,
    }
}

/// Christoffel symbols at latitude `phi` (radians). Fails with a
/// pole-singularity error for `|phi| >= pi/2`.
pub fn christoffel(ell: &Ellipsoid, phi: f64) -> Result<ChristoffelTriple> {
    if !(phi.abs() < FRAC_PI_2) {
        return Err(GeodesicError::PoleSingularity {
            lat_deg: phi.to_degrees(),
        });
    }
    Ok(christoffel_unchecked(ell, phi))
}

/// Raw integrand over the flat state array `[phi, dphi, lam, dlam]`.
///
/// Unlike [`geodetic_rhs`] this performs no pole validation: the closed
/// forms are evaluated blindly, which is what a fixed-step integrator needs
/// (intermediate stages may brush past the guard latitude). Callers are
/// responsible for keeping trajectories inside the pole-free domain.
pub fn rhs_array(ell: &Ellipsoid, y: &[f64; 4]) -> [f64; 4] {
    let ch = christoffel_unchecked(ell, y[0]);
    let dphi = y[1];
    let dlam = y[3];
    [
        dphi,
        -ch.g111 * dphi * dphi - ch.g122 * dlam * dlam,
        dlam,
        -2.0 * ch.g212 * dphi * dlam,
    ]
}

/// Right-hand side of the four-equation geodesic system at `st`, as the
/// derivative of `(phi, dphi, lam, dlam)` with respect to arc length.
pub fn geodetic_rhs(ell: &Ellipsoid, st: &GeodeticState) -> Result<[f64; 4]> {
    christoffel(ell, st.phi)?;
    Ok(rhs_array(ell, &st.to_array()))
}

/// Initial state at `(phi0, lam0)` (radians) for a geodesic leaving with
/// azimuth `alpha0` (radians, clockwise from north):
/// `dphi/ds = cos(alpha0) / M`, `dlam/ds = sin(alpha0) / (N cos phi0)`.
pub fn initial_geodetic_state(
    ell: &Ellipsoid,
    phi0: f64,
    lam0: f64,
    alpha0: f64,
) -> Result<GeodeticState> {
    if !(phi0.abs() < FRAC_PI_2) {
        return Err(GeodesicError::PoleSingularity {
            lat_deg: phi0.to_degrees(),
        });
    }
    let (sin_a, cos_a) = alpha0.sin_cos();
    Ok(GeodeticState {
        phi: phi0,
        dphi: cos_a / ell.meridian_radius(phi0),
        lam: lam0,
        dlam: sin_a / (ell.prime_vertical_radius(phi0) * phi0.cos()),
    })
}

/// Azimuth in degrees in [0, 360) at a state, from the quadrant-resolving
/// arctangent of `(N cos phi dlam, M dphi)`.
pub fn azimuth_geodetic(ell: &Ellipsoid, st: &GeodeticState) -> Result<f64> {
    let u = ell.meridian_radius(st.phi) * st.dphi;
    let v = ell.prime_vertical_radius(st.phi) * st.phi.cos() * st.dlam;
    // unit-speed states have u^2 + v^2 = 1; anything near zero is degenerate
    if u * u + v * v < 1e-24 {
        return Err(GeodesicError::DegenerateDirection);
    }
    Ok(wrap_azimuth_deg(v.atan2(u).to_degrees()))
}

/// Clairaut constant in meters, computed from the raw state as
/// `C = G(phi) dlam/ds`; equal to `N cos(phi) sin(alpha)` for unit-speed
/// states. Conserved along exact geodesics, so its drift measures
/// integration error.
pub fn clairaut_geodetic(ell: &Ellipsoid, st: &GeodeticState) -> f64 {
    first_fundamental_form(ell, st.phi).g * st.dlam
}

/// Defect of the unit-speed identity, `E dphi^2 + G dlam^2 - 1`.
pub fn unit_speed_defect(ell: &Ellipsoid, st: &GeodeticState) -> f64 {
    let m = first_fundamental_form(ell, st.phi);
    m.e * st.dphi * st.dphi + m.g * st.dlam * st.dlam - 1.0
}
