//! Generates `data/geodtest_sample.dat`: a reference file of direct
//! geodesic problems on WGS84, in the GeographicLib `GeodTest` layout
//! (10 whitespace-separated columns per line:
//! `lat1 lon1 azi1 lat2 lon2 azi2 s12 a12 m12 S12`).
//!
//! The reference endpoints are computed with the geographiclib-rs port of
//! Karney's algorithms, which is accurate to around 15 nanometers in double
//! precision. Records are emitted in nine equal blocks that mirror the case
//! mix of the published 500 000-geodesic test set: random, nearly
//! antipodal, short, one end near a pole, both ends near opposite poles,
//! nearly meridional, nearly equatorial, running between vertices, ending
//! close to vertices.
//!
//! Inputs follow the published conventions: lat1 in [0, 90] and azi1 in
//! [0, 180] as multiples of 1e-12 deg, lon1 = 0, s12 a multiple of 0.1 um
//! in [0, 20003931.4586254] m. The endpoint is recomputed from the rounded
//! inputs, so every line is self-consistent at full double precision.

use geographiclib_rs::{capability, Geodesic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::{BufWriter, Write};

const S_MAX: f64 = 20_003_931.458_625_4;
const PER_GROUP: usize = 1500;
const SEED: u64 = 0x47656f6454657374; // "GeodTest"

fn q12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

fn q7(x: f64) -> f64 {
    (x * 1e7).round() / 1e7
}

struct Generator {
    geod: Geodesic,
    rng: ChaCha8Rng,
}

struct Row {
    lat1: f64,
    azi1: f64,
    s12: f64,
    lat2: f64,
    lon2: f64,
    azi2: f64,
    a12: f64,
    m12: f64,
    area12: f64,
}

impl Generator {
    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Log-uniform magnitude 10^u with u in [lo, hi); spreads samples
    /// evenly across scales of closeness to a degenerate configuration.
    fn log_mag(&mut self, lo: f64, hi: f64) -> f64 {
        10f64.powf(self.uniform(lo, hi))
    }

    /// Distance in meters reached after `a12` degrees of arc.
    fn arc_to_distance(&self, lat1: f64, azi1: f64, a12: f64) -> f64 {
        let (_a12, _lat2, _lon2, _azi2, s12, _m12, _mm12, _mm21, _area) =
            self.geod
                ._gen_direct(lat1, 0.0, azi1, true, a12, capability::ALL);
        s12
    }

    /// Forward azimuth after `a12` degrees of arc.
    fn arc_to_azi2(&self, lat1: f64, azi1: f64, a12: f64) -> f64 {
        let (_a12, _lat2, _lon2, azi2, _s12, _m12, _mm12, _mm21, _area) =
            self.geod
                ._gen_direct(lat1, 0.0, azi1, true, a12, capability::ALL);
        azi2
    }

    /// Arc length (degrees) of the first point along the geodesic where the
    /// forward azimuth crosses 90 deg (a vertex), found by scan + bisection.
    fn arc_to_first_vertex(&self, lat1: f64, azi1: f64) -> Option<f64> {
        let f = |a12: f64| self.arc_to_azi2(lat1, azi1, a12) - 90.0;
        let mut lo = 1e-9;
        let mut flo = f(lo);
        let mut hi = lo;
        let mut found = false;
        for k in 1..=180 {
            hi = k as f64;
            let fhi = f(hi);
            if flo * fhi <= 0.0 {
                found = true;
                break;
            }
            lo = hi;
            flo = fhi;
        }
        if !found {
            return None;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if flo * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }

    /// Round the inputs to the published granularity and recompute the
    /// reference endpoint from the rounded values.
    fn finish(&self, lat1: f64, azi1: f64, s12: f64) -> Row {
        let lat1 = q12(lat1.clamp(0.0, 90.0));
        let azi1 = q12(azi1.clamp(0.0, 180.0));
        let s12 = q7(s12.clamp(0.0, S_MAX));
        let (a12, lat2, lon2, azi2, _s12, m12, _mm12, _mm21, area12) =
            self.geod
                ._gen_direct(lat1, 0.0, azi1, false, s12, capability::ALL);
        Row {
            lat1,
            azi1,
            s12,
            lat2,
            lon2,
            azi2,
            a12,
            m12,
            area12,
        }
    }

    fn generate_group(&mut self, group: usize) -> Vec<Row> {
        let mut rows = Vec::with_capacity(PER_GROUP);
        for i in 0..PER_GROUP {
            let row = match group {
                // randomly distributed
                1 => {
                    let lat1 = self.uniform(0.0, 90.0);
                    let azi1 = self.uniform(0.0, 180.0);
                    let s12 = self.uniform(0.0, S_MAX);
                    self.finish(lat1, azi1, s12)
                }
                // nearly antipodal
                2 => {
                    let lat1 = self.uniform(0.0, 90.0);
                    let azi1 = self.uniform(0.0, 180.0);
                    let a12 = 180.0 - self.log_mag(-6.0, 0.3);
                    let s12 = self.arc_to_distance(q12(lat1), q12(azi1), a12);
                    self.finish(lat1, azi1, s12)
                }
                // short distances (including zero)
                3 => {
                    let lat1 = self.uniform(0.0, 90.0);
                    let azi1 = self.uniform(0.0, 180.0);
                    let s12 = if i % 100 == 0 {
                        0.0
                    } else {
                        self.log_mag(-7.0, 5.5)
                    };
                    self.finish(lat1, azi1, s12)
                }
                // one end near a pole
                4 => {
                    let lat1 = 90.0 - self.log_mag(-7.0, 1.0);
                    let azi1 = self.uniform(0.0, 180.0);
                    let s12 = self.uniform(0.0, S_MAX);
                    self.finish(lat1, azi1, s12)
                }
                // both ends near opposite poles
                5 => {
                    let lat1 = 90.0 - self.log_mag(-7.0, 0.0);
                    let azi1 = self.uniform(0.0, 180.0);
                    let a12 = 180.0 - self.log_mag(-6.0, -0.3);
                    let s12 = self.arc_to_distance(q12(lat1), q12(azi1), a12);
                    self.finish(lat1, azi1, s12)
                }
                // nearly meridional
                6 => {
                    let lat1 = self.uniform(0.0, 90.0);
                    let off = self.log_mag(-9.0, 0.3);
                    let azi1 = if i % 2 == 0 { off } else { 180.0 - off };
                    let s12 = self.uniform(0.0, S_MAX);
                    self.finish(lat1, azi1, s12)
                }
                // nearly equatorial
                7 => {
                    let lat1 = self.log_mag(-9.0, 0.0);
                    let off = self.log_mag(-9.0, 0.3);
                    let azi1 = if i % 2 == 0 { 90.0 + off } else { 90.0 - off };
                    let s12 = self.uniform(0.0, S_MAX);
                    self.finish(lat1, azi1, s12)
                }
                // running between vertices: start at a vertex (azi = 90),
                // end 180 deg of arc later at the opposite vertex
                8 => {
                    let lat1 = self.uniform(0.5, 89.5);
                    let s12 = self.arc_to_distance(q12(lat1), 90.0, 180.0);
                    self.finish(lat1, 90.0, s12)
                }
                // ending close to a vertex
                9 => {
                    if i % 2 == 0 {
                        let lat1 = self.uniform(0.5, 89.5);
                        let a12 = 180.0 + self.uniform(-1.0, 1.0) * self.log_mag(-7.0, -1.3);
                        let s12 = self.arc_to_distance(q12(lat1), 90.0, a12);
                        self.finish(lat1, 90.0, s12)
                    } else {
                        // generic start, stopped near its first vertex
                        let lat1 = q12(self.uniform(0.0, 80.0));
                        let azi1 = q12(self.uniform(20.0, 88.0));
                        let vertex =
                            self.arc_to_first_vertex(lat1, azi1).unwrap_or(90.0);
                        let a12 =
                            vertex + self.uniform(-1.0, 1.0) * self.log_mag(-7.0, -1.3);
                        let s12 = self.arc_to_distance(lat1, azi1, a12);
                        self.finish(lat1, azi1, s12)
                    }
                }
                _ => unreachable!(),
            };
            rows.push(row);
        }
        rows
    }
}

fn main() -> std::io::Result<()> {
    let out_path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "../../data/geodtest_sample.dat".to_string());
    let mut gen = Generator {
        geod: Geodesic::wgs84(),
        rng: ChaCha8Rng::seed_from_u64(SEED),
    };
    let file = std::fs::File::create(&out_path)?;
    let mut w = BufWriter::new(file);
    for group in 1..=9 {
        for row in gen.generate_group(group) {
            writeln!(
                w,
                "{:.12} 0 {:.12} {:.16} {:.16} {:.16} {:.7} {:.16} {:.8} {:.4}",
                row.lat1,
                row.azi1,
                row.lat2,
                row.lon2,
                row.azi2,
                row.s12,
                row.a12,
                row.m12,
                row.area12
            )?;
        }
        eprintln!("group {group}: {PER_GROUP} records");
    }
    w.flush()?;
    eprintln!("wrote {out_path}");
    Ok(())
}
