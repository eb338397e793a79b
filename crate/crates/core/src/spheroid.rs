//! Oblate spheroid model: curvature radii, geodetic/Cartesian conversions,
//! and the on-surface residual used as a precision diagnostic.
//!
//! Angles cross the public coordinate types in degrees and are converted to
//! radians once, at the conversion boundary. Lower-level curvature helpers
//! take radians.

use crate::error::{GeodesicError, Result};

/// WGS84 major semiaxis in meters.
pub const WGS84_A: f64 = 6_378_137.0;
/// WGS84 flattening.
pub const WGS84_F: f64 = 1.0 / 298.257_223_563;

/// Ellipsoid of revolution, flattened at the poles.
///
/// Stores the defining parameters `(a, f)` together with the derived first
/// eccentricity squared `e2 = f(2 - f)` and the minor semiaxis
/// `b = a sqrt(1 - e2)`. `f = 0` yields a sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipsoid {
    a: f64,
    f: f64,
    e2: f64,
    b: f64,
}

/// Geodetic latitude/longitude pair in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GeodeticCoord {
    /// Geodetic latitude in degrees, in [-90, +90].
    pub lat: f64,
    /// Geodetic longitude in degrees, in (-180, +180].
    pub lon: f64,
}

impl GeodeticCoord {
    pub fn new(lat: f64, lon: f64) -> Self {
        Self { lat, lon }
    }
}

/// Earth-centered Cartesian position in meters, z along the rotation axis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CartesianCoord {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl CartesianCoord {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }
}

impl Ellipsoid {
    /// Build an ellipsoid from the major semiaxis `a` (meters) and
    /// flattening `f`. Requires `a > 0` and `0 <= f < 1`.
    pub fn new(a: f64, f: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(GeodesicError::InvalidEllipsoid { field: "a", value: a });
        }
        if !f.is_finite() || !(0.0..1.0).contains(&f) {
            return Err(GeodesicError::InvalidEllipsoid { field: "f", value: f });
        }
        let e2 = f * (2.0 - f);
        let b = a * (1.0 - e2).sqrt();
        Ok(Self { a, f, e2, b })
    }

    /// The WGS84 ellipsoid.
    pub fn wgs84() -> Self {
        Self::new(WGS84_A, WGS84_F).expect("WGS84 parameters are valid")
    }

    /// Major semiaxis in meters.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Flattening.
    pub fn f(&self) -> f64 {
        self.f
    }

    /// First eccentricity squared, `f (2 - f)`.
    pub fn e2(&self) -> f64 {
        self.e2
    }

    /// Minor semiaxis in meters, `a sqrt(1 - e2)`.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Radius of curvature of the prime vertical normal section at geodetic
    /// latitude `lat` (radians): `N = a / sqrt(1 - e2 sin^2 lat)`.
    pub fn prime_vertical_radius(&self, lat: f64) -> f64 {
        let s = lat.sin();
        self.a / (1.0 - self.e2 * s * s).sqrt()
    }

    /// Radius of curvature of the meridian normal section at geodetic
    /// latitude `lat` (radians): `M = a (1 - e2) / (1 - e2 sin^2 lat)^(3/2)`.
    pub fn meridian_radius(&self, lat: f64) -> f64 {
        let s = lat.sin();
        let w2 = 1.0 - self.e2 * s * s;
        self.a * (1.0 - self.e2) / (w2 * w2.sqrt())
    }

    /// Map a surface point from geodetic to Cartesian coordinates:
    /// `(N cos lat cos lon, N cos lat sin lon, N (1 - e2) sin lat)`.
    pub fn geodetic_to_cartesian(&self, g: GeodeticCoord) -> CartesianCoord {
        let lat = g.lat.to_radians();
        let lon = g.lon.to_radians();
        let (sin_lat, cos_lat) = lat.sin_cos();
        let (sin_lon, cos_lon) = lon.sin_cos();
        let n = self.a / (1.0 - self.e2 * sin_lat * sin_lat).sqrt();
        CartesianCoord {
            x: n * cos_lat * cos_lon,
            y: n * cos_lat * sin_lon,
            z: n * (1.0 - self.e2) * sin_lat,
        }
    }

    /// Inverse of [`geodetic_to_cartesian`](Self::geodetic_to_cartesian) for
    /// on-surface points, via a closed-form-seeded fixed-point iteration on
    /// the latitude (converges to machine precision in a few steps for any
    /// flattening below 1).
    ///
    /// Points with `|surface_residual| > 1e-6` are rejected; on the axis
    /// (`x = y = 0`) the convention is `lat = +/-90, lon = 0`.
    pub fn cartesian_to_geodetic(&self, c: CartesianCoord) -> Result<GeodeticCoord> {
        let residual = self.surface_residual(c);
        if !residual.is_finite() || residual.abs() > 1e-6 {
            return Err(GeodesicError::OffSurface { residual });
        }
        let p = c.x.hypot(c.y);
        if p == 0.0 {
            return Ok(GeodeticCoord {
                lat: 90f64.copysign(c.z),
                lon: 0.0,
            });
        }
        let lon = c.y.atan2(c.x);
        // tan(lat) = (z + e2 N sin(lat)) / p, seeded with the geocentric form.
        let mut lat = (c.z / (p * (1.0 - self.e2))).atan();
        for _ in 0..10 {
            let s = lat.sin();
            let n = self.a / (1.0 - self.e2 * s * s).sqrt();
            let next = ((c.z + self.e2 * n * s) / p).atan();
            let step = (next - lat).abs();
            lat = next;
            if step < 1e-15 {
                break;
            }
        }
        Ok(GeodeticCoord {
            lat: lat.to_degrees(),
            lon: lon.to_degrees(),
        })
    }

    /// Normalized implicit-surface residual
    /// `S = (x^2 + y^2) / a^2 + z^2 / (a^2 (1 - e2)) - 1`.
    ///
    /// Zero exactly on the surface; dimensionless (the defining quadric is
    /// divided by `a^2` so the value is comparable across ellipsoid sizes).
    pub fn surface_residual(&self, c: CartesianCoord) -> f64 {
        let a2 = self.a * self.a;
        (c.x * c.x + c.y * c.y) / a2 + c.z * c.z / (a2 * (1.0 - self.e2)) - 1.0
    }
}

/// Wrap a longitude in degrees to (-180, +180].
pub fn wrap_lon_deg(lon: f64) -> f64 {
    let w = lon.rem_euclid(360.0);
    if w > 180.0 {
        w - 360.0
    } else {
        w
    }
}

/// Wrap an azimuth in degrees to [0, 360).
pub fn wrap_azimuth_deg(azi: f64) -> f64 {
    let w = azi.rem_euclid(360.0);
    if w >= 360.0 {
        0.0
    } else {
        w
    }
}

/// Minimal signed angular difference `a - b` in degrees, in (-180, +180].
pub fn minimal_angle_diff_deg(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn wgs84_parameters() {
        let ell = Ellipsoid::wgs84();
        assert_eq!(ell.a(), 6_378_137.0);
        assert_abs_diff_eq!(ell.e2(), 0.00669437999014, epsilon = 1e-14);
        // derived fields are recomputable bit-for-bit from (a, f)
        assert_eq!(ell.e2(), ell.f() * (2.0 - ell.f()));
        assert_eq!(ell.b(), ell.a() * (1.0 - ell.e2()).sqrt());
        assert!(ell.b() < ell.a());
    }

    #[test]
    fn unit_sphere_parameters() {
        let sph = Ellipsoid::new(1.0, 0.0).unwrap();
        assert_eq!(sph.e2(), 0.0);
        assert_eq!(sph.b(), 1.0);
    }

    #[test]
    fn half_flattening() {
        let ell = Ellipsoid::new(6_378_137.0, 0.5).unwrap();
        assert_eq!(ell.e2(), 0.75);
    }

    #[test]
    fn rejects_bad_parameters() {
        for (a, f, field) in [
            (0.0, 0.0, "a"),
            (-1.0, 0.0, "a"),
            (f64::NAN, 0.0, "a"),
            (1.0, 1.0, "f"),
            (1.0, -0.1, "f"),
            (1.0, f64::INFINITY, "f"),
        ] {
            match Ellipsoid::new(a, f) {
                Err(GeodesicError::InvalidEllipsoid { field: got, .. }) => assert_eq!(got, field),
                other => panic!("expected InvalidEllipsoid, got {other:?}"),
            }
        }
    }

    #[test]
    fn prime_vertical_radius_landmarks() {
        let ell = Ellipsoid::wgs84();
        assert_eq!(ell.prime_vertical_radius(0.0), ell.a());
        assert_relative_eq!(
            ell.prime_vertical_radius(FRAC_PI_2),
            ell.a() / (1.0 - ell.e2()).sqrt(),
            max_relative = 1e-15
        );
        // frozen 50-digit evaluation of a / sqrt(1 - e2 sin^2 (pi/4))
        assert_relative_eq!(
            ell.prime_vertical_radius(FRAC_PI_4),
            6388838.290121147995997,
            max_relative = 1e-15
        );
    }

    #[test]
    fn meridian_radius_landmarks() {
        let ell = Ellipsoid::wgs84();
        assert_eq!(ell.meridian_radius(0.0), ell.a() * (1.0 - ell.e2()));
        // frozen 50-digit evaluation of a (1 - e2) / (1 - e2 sin^2 (pi/4))^(3/2)
        assert_relative_eq!(
            ell.meridian_radius(FRAC_PI_4),
            6367381.815619548915643,
            max_relative = 1e-15
        );
        // at the pole both curvature radii coincide
        assert_relative_eq!(
            ell.meridian_radius(FRAC_PI_2),
            ell.prime_vertical_radius(FRAC_PI_2),
            max_relative = 1e-15
        );
        // sphere degenerate case: M = a at any latitude
        let sph = Ellipsoid::new(2.5, 0.0).unwrap();
        assert_eq!(sph.meridian_radius(0.7), 2.5);
    }

    #[test]
    fn radii_ordering() {
        let ell = Ellipsoid::wgs84();
        let lo = ell.a() * (1.0 - ell.e2());
        let hi = ell.a() / (1.0 - ell.e2()).sqrt();
        let mut prev_m = 0.0;
        for k in 0..=90 {
            let lat = (k as f64).to_radians();
            let m = ell.meridian_radius(lat);
            let n = ell.prime_vertical_radius(lat);
            assert!(lo <= m * (1.0 + 1e-15));
            assert!(m <= n * (1.0 + 1e-15));
            assert!(n <= hi * (1.0 + 1e-15));
            // meridian radius grows monotonically toward the pole
            assert!(m >= prev_m, "M not monotone at lat {k}");
            prev_m = m;
        }
    }

    #[test]
    fn forward_map_landmarks() {
        let ell = Ellipsoid::wgs84();
        let origin = ell.geodetic_to_cartesian(GeodeticCoord::new(0.0, 0.0));
        assert_eq!(origin.x, ell.a());
        assert_eq!(origin.y, 0.0);
        assert_eq!(origin.z, 0.0);

        let pole = ell.geodetic_to_cartesian(GeodeticCoord::new(90.0, 12.0));
        assert_abs_diff_eq!(pole.x, 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(pole.y, 0.0, epsilon = 1e-8);
        assert_relative_eq!(pole.z, ell.b(), max_relative = 1e-15);

        // frozen 50-digit evaluation of the parametric map at lat 45, lon 30
        let p = ell.geodetic_to_cartesian(GeodeticCoord::new(45.0, 30.0));
        assert_abs_diff_eq!(p.x, 3912348.464988042793278, epsilon = 1e-9);
        assert_abs_diff_eq!(p.y, 2258795.439424465357662, epsilon = 1e-9);
        assert_abs_diff_eq!(p.z, 4487348.408865919680857, epsilon = 1e-9);
    }

    #[test]
    fn inverse_map_landmarks() {
        let ell = Ellipsoid::wgs84();
        let g = ell
            .cartesian_to_geodetic(CartesianCoord::new(ell.a(), 0.0, 0.0))
            .unwrap();
        assert_eq!(g.lat, 0.0);
        assert_eq!(g.lon, 0.0);

        let pole = ell
            .cartesian_to_geodetic(CartesianCoord::new(0.0, 0.0, ell.b()))
            .unwrap();
        assert_eq!(pole.lat, 90.0);
        assert_eq!(pole.lon, 0.0);

        let south = ell
            .cartesian_to_geodetic(CartesianCoord::new(0.0, 0.0, -ell.b()))
            .unwrap();
        assert_eq!(south.lat, -90.0);
    }

    #[test]
    fn round_trip_through_cartesian() {
        let ell = Ellipsoid::wgs84();
        let g = GeodeticCoord::new(37.5, -12.25);
        let back = ell.cartesian_to_geodetic(ell.geodetic_to_cartesian(g)).unwrap();
        assert_abs_diff_eq!(back.lat, g.lat, epsilon = 1e-9);
        assert_abs_diff_eq!(back.lon, g.lon, epsilon = 1e-9);
    }

    #[test]
    fn rejects_off_surface_points() {
        let ell = Ellipsoid::wgs84();
        let err = ell
            .cartesian_to_geodetic(CartesianCoord::new(2.0 * ell.a(), 0.0, 0.0))
            .unwrap_err();
        assert!(matches!(err, GeodesicError::OffSurface { .. }));
    }

    #[test]
    fn surface_residual_values() {
        let ell = Ellipsoid::wgs84();
        assert_eq!(ell.surface_residual(CartesianCoord::new(ell.a(), 0.0, 0.0)), 0.0);
        assert_eq!(
            ell.surface_residual(CartesianCoord::new(2.0 * ell.a(), 0.0, 0.0)),
            3.0
        );
        let p = ell.geodetic_to_cartesian(GeodeticCoord::new(-33.7, 151.2));
        assert!(ell.surface_residual(p).abs() <= 1e-15);
    }

    #[test]
    fn wrapping_helpers() {
        assert_eq!(wrap_lon_deg(180.0), 180.0);
        assert_eq!(wrap_lon_deg(-180.0), 180.0);
        assert_eq!(wrap_lon_deg(190.0), -170.0);
        assert_eq!(wrap_lon_deg(360.0), 0.0);
        assert_eq!(wrap_azimuth_deg(-90.0), 270.0);
        assert_eq!(wrap_azimuth_deg(360.0), 0.0);
        assert_eq!(wrap_azimuth_deg(-1e-18), 0.0);
        assert_abs_diff_eq!(
            minimal_angle_diff_deg(180.0001, 179.9999),
            0.0002,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            minimal_angle_diff_deg(359.9, 0.1),
            -0.2,
            epsilon = 1e-12
        );
    }
}
