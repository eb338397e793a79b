//! Shared oracles for integration tests. Everything here is computed by an
//! independent route (quadrature, closed-form trigonometry) and never calls
//! into the ODE solver it is used to check.

#![allow(dead_code)]

use geodesic_ivp::Ellipsoid;

/// 8-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 8] = [
    -0.9602898564975363,
    -0.7966664774136267,
    -0.5255324099163290,
    -0.1834346424956498,
    0.1834346424956498,
    0.5255324099163290,
    0.7966664774136267,
    0.9602898564975363,
];
const GL_WEIGHTS: [f64; 8] = [
    0.1012285362903763,
    0.2223810344533745,
    0.3137066458778873,
    0.3626837833783620,
    0.3626837833783620,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

/// Arc length along the meridian from latitude 0 to `lat` (radians), by
/// composite Gauss-Legendre quadrature of the meridian curvature radius.
pub fn meridian_arc(ell: &Ellipsoid, lat: f64) -> f64 {
    let panels = 512;
    let h = lat / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = (k as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut panel = 0.0;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
            panel += w * ell.meridian_radius(mid + half * x);
        }
        total += panel * half;
    }
    total
}

/// Latitude (radians) whose meridian arc from the equator equals `s`
/// meters, by bisection. `s` must not exceed the quarter meridian.
pub fn invert_meridian_arc(ell: &Ellipsoid, s: f64) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = std::f64::consts::FRAC_PI_2;
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if meridian_arc(ell, mid) < s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Closed-form great-circle endpoint on the unit sphere, by rotating the
/// start vector in the plane spanned by it and the initial direction.
///
/// Inputs and outputs in degrees, arc in radians (= unit-sphere length).
/// Returns (lat1, lon1, azi1).
pub fn great_circle_endpoint(
    lat0_deg: f64,
    lon0_deg: f64,
    azi0_deg: f64,
    arc: f64,
) -> (f64, f64, f64) {
    let (u, d) = great_circle_start(lat0_deg, lon0_deg, azi0_deg);
    let (sin_arc, cos_arc) = arc.sin_cos();
    let v = [
        u[0] * cos_arc + d[0] * sin_arc,
        u[1] * cos_arc + d[1] * sin_arc,
        u[2] * cos_arc + d[2] * sin_arc,
    ];
    // direction transported along the circle
    let w = [
        d[0] * cos_arc - u[0] * sin_arc,
        d[1] * cos_arc - u[1] * sin_arc,
        d[2] * cos_arc - u[2] * sin_arc,
    ];
    let lat1 = v[2].asin();
    let lon1 = v[1].atan2(v[0]);
    let (east, north) = local_frame(v);
    let azi1 = dot(w, east).atan2(dot(w, north));
    (
        lat1.to_degrees(),
        lon1.to_degrees(),
        azi1.to_degrees().rem_euclid(360.0),
    )
}

/// Unit-sphere chord distance between two (lat, lon) pairs in degrees.
pub fn unit_sphere_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let pa = unit_vector(a.0, a.1);
    let pb = unit_vector(b.0, b.1);
    let d = [pa[0] - pb[0], pa[1] - pb[1], pa[2] - pb[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

fn unit_vector(lat_deg: f64, lon_deg: f64) -> [f64; 3] {
    let (sin_lat, cos_lat) = lat_deg.to_radians().sin_cos();
    let (sin_lon, cos_lon) = lon_deg.to_radians().sin_cos();
    [cos_lat * cos_lon, cos_lat * sin_lon, sin_lat]
}

fn local_frame(v: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let rho = v[0].hypot(v[1]);
    let east = [-v[1] / rho, v[0] / rho, 0.0];
    let north = [
        -v[2] * east[1],
        v[2] * east[0],
        v[0] * east[1] - v[1] * east[0],
    ];
    (east, north)
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn great_circle_start(lat0_deg: f64, lon0_deg: f64, azi0_deg: f64) -> ([f64; 3], [f64; 3]) {
    let u = unit_vector(lat0_deg, lon0_deg);
    let (east, north) = local_frame(u);
    let (sin_a, cos_a) = azi0_deg.to_radians().sin_cos();
    let d = [
        east[0] * sin_a + north[0] * cos_a,
        east[1] * sin_a + north[1] * cos_a,
        east[2] * sin_a + north[2] * cos_a,
    ];
    (u, d)
}

/// Observed convergence orders log2(err[i] / err[i+1]) for a halving-step
/// error sequence.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors
        .windows(2)
        .map(|w| (w[0] / w[1]).log2())
        .collect()
}

/// Path of the committed reference sample file.
pub fn sample_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/geodtest_sample.dat")
}
