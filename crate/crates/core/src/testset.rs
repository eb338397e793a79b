//! Ingestion and evaluation of reference geodesic test files in the
//! GeographicLib `GeodTest` layout: one record per line, at least seven
//! whitespace-separated decimal fields
//! `lat0 lon0 azi0 lat1 lon1 azi1 s01` (extra columns ignored), ASCII, no
//! header.
//!
//! Each record is solved as a direct problem and compared against the
//! reference endpoint; per-record metrics are aggregated into group-wise
//! maxima keyed by the published set's identification-number ranges.

use crate::error::{GeodesicError, Result};
use crate::solver::{solve_direct, CoordinateSystem, DirectProblem};
use crate::spheroid::{minimal_angle_diff_deg, Ellipsoid, GeodeticCoord};

/// Largest arc length in a conforming test set, meters (half the meridian
/// perimeter of WGS84).
pub const TEST_SET_MAX_DISTANCE: f64 = 20_003_931.458_625_4;

/// Record count of the published full set.
pub const PUBLISHED_SET_LEN: usize = 500_000;

/// One line of the test file. `id` is the 1-based line number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestRecord {
    pub id: usize,
    pub phi0: f64,
    pub lam0: f64,
    pub alpha0: f64,
    pub phi1_ref: f64,
    pub lam1_ref: f64,
    pub alpha1_ref: f64,
    pub s01: f64,
}

/// Group index 1..=9 per the published set's identification-number ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupId(u8);

/// Upper identification-number bound (inclusive) of each group.
const GROUP_UPPER_BOUNDS: [usize; 9] = [
    100_000, 150_000, 200_000, 250_000, 300_000, 350_000, 400_000, 450_000, 500_000,
];

/// What each group of the published set exercises.
pub const GROUP_CASES: [&str; 9] = [
    "randomly distributed",
    "nearly antipodal",
    "short distances",
    "one end near a pole",
    "both ends near opposite poles",
    "nearly meridional",
    "nearly equatorial",
    "running between vertices",
    "ending close to vertices",
];

impl GroupId {
    pub fn new(value: u8) -> Result<Self> {
        if (1..=9).contains(&value) {
            Ok(Self(value))
        } else {
            Err(GeodesicError::InvalidProblem {
                reason: "group index must lie in 1..=9",
            })
        }
    }

    pub fn value(&self) -> u8 {
        self.0
    }

    /// Identification-number range (inclusive) of this group in the
    /// published set.
    pub fn id_range(&self) -> (usize, usize) {
        let i = (self.0 - 1) as usize;
        let lo = if i == 0 { 1 } else { GROUP_UPPER_BOUNDS[i - 1] + 1 };
        (lo, GROUP_UPPER_BOUNDS[i])
    }

    pub fn case(&self) -> &'static str {
        GROUP_CASES[(self.0 - 1) as usize]
    }

    pub fn all() -> impl Iterator<Item = GroupId> {
        (1..=9).map(GroupId)
    }
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Group of a record by its identification number. Numbers beyond the
/// published set map to the last group; callers should treat such files as
/// custom sets.
pub fn classify_group(id: usize) -> Result<GroupId> {
    if id < 1 {
        return Err(GeodesicError::InvalidProblem {
            reason: "record identification numbers start at 1",
        });
    }
    for (i, &hi) in GROUP_UPPER_BOUNDS.iter().enumerate() {
        if id <= hi {
            return Ok(GroupId(i as u8 + 1));
        }
    }
    Ok(GroupId(9))
}

/// Parse one record. `id` is the 1-based line number and is used for error
/// reporting and group classification.
pub fn parse_test_line(line: &str, id: usize) -> Result<TestRecord> {
    let mut fields = line.split_whitespace();
    let mut take = |column: usize| -> Result<f64> {
        let tok = fields.next().ok_or_else(|| GeodesicError::Parse {
            line: id,
            column,
            reason: "expected at least 7 fields".to_string(),
        })?;
        tok.parse::<f64>().map_err(|_| GeodesicError::Parse {
            line: id,
            column,
            reason: format!("not a number: {tok:?}"),
        })
    };
    Ok(TestRecord {
        id,
        phi0: take(1)?,
        lam0: take(2)?,
        alpha0: take(3)?,
        phi1_ref: take(4)?,
        lam1_ref: take(5)?,
        alpha1_ref: take(6)?,
        s01: take(7)?,
    })
}

/// Parse a whole file, skipping blank lines but keeping the 1-based line
/// numbers as identification numbers.
pub fn parse_test_file(content: &str) -> Result<Vec<TestRecord>> {
    let mut records = Vec::new();
    for (idx, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        records.push(parse_test_line(line, idx + 1)?);
    }
    Ok(records)
}

/// Deviations from the published set's conventions. Informational only;
/// user-supplied sets may violate them freely.
pub fn conformance_warnings(rec: &TestRecord) -> Vec<String> {
    let mut w = Vec::new();
    if !(0.0..=90.0).contains(&rec.phi0) {
        w.push(format!("record {}: phi0 = {} outside [0, 90]", rec.id, rec.phi0));
    }
    if rec.lam0 != 0.0 {
        w.push(format!("record {}: lam0 = {} is not 0", rec.id, rec.lam0));
    }
    if !(0.0..=180.0).contains(&rec.alpha0) {
        w.push(format!(
            "record {}: alpha0 = {} outside [0, 180]",
            rec.id, rec.alpha0
        ));
    }
    if !(0.0..=TEST_SET_MAX_DISTANCE).contains(&rec.s01) {
        w.push(format!(
            "record {}: s01 = {} outside [0, {TEST_SET_MAX_DISTANCE}]",
            rec.id, rec.s01
        ));
    }
    w
}

/// Consistency of the reference data itself: the Clairaut constant computed
/// from the reference endpoint `(phi1, alpha1)` must match the one from the
/// start data `(phi0, alpha0)`. Returns the absolute defect in meters.
pub fn reference_clairaut_defect(ell: &Ellipsoid, rec: &TestRecord) -> f64 {
    let c0 = clairaut_from_point(ell, rec.phi0, rec.alpha0);
    let c1 = clairaut_from_point(ell, rec.phi1_ref, rec.alpha1_ref);
    (c1 - c0).abs()
}

fn clairaut_from_point(ell: &Ellipsoid, lat_deg: f64, alpha_deg: f64) -> f64 {
    let lat = lat_deg.to_radians();
    ell.prime_vertical_radius(lat) * lat.cos() * alpha_deg.to_radians().sin()
}

/// Endpoint and trajectory error metrics of one record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecordMetrics {
    /// Cartesian distance between the computed and reference endpoints,
    /// meters.
    pub delta_r1: f64,
    /// Signed end-azimuth difference, arcseconds (minimal modulo 360 deg).
    pub delta_alpha1_arcsec: f64,
    /// Difference between the computed endpoint Clairaut constant and the
    /// reference one, meters.
    pub delta_c1: f64,
    /// Trajectory maximum of |C(s) - C0|, meters.
    pub max_abs_delta_c: f64,
    /// Trajectory maximum of the normalized surface residual (Cartesian
    /// system only).
    pub max_abs_surface_residual: Option<f64>,
}

/// Solve one record as a direct problem with `n` integration steps and
/// compare against its reference endpoint. The comparison is done in
/// Cartesian space: the reference endpoint goes through the forward
/// parametric map, never through the iterative inverse.
pub fn evaluate_record(
    ell: &Ellipsoid,
    rec: &TestRecord,
    n: usize,
    system: CoordinateSystem,
) -> Result<RecordMetrics> {
    let prob = DirectProblem {
        start: GeodeticCoord::new(rec.phi0, rec.lam0),
        alpha0: rec.alpha0,
        s01: rec.s01,
        system,
        steps: Some(n),
    };
    let res = solve_direct(ell, &prob).map_err(|e| GeodesicError::Record {
        id: rec.id,
        source: Box::new(e),
    })?;

    let reference = ell.geodetic_to_cartesian(GeodeticCoord::new(rec.phi1_ref, rec.lam1_ref));
    let dx = res.end_cartesian.x - reference.x;
    let dy = res.end_cartesian.y - reference.y;
    let dz = res.end_cartesian.z - reference.z;

    let c1 = res.end_cartesian.x.hypot(res.end_cartesian.y) * res.alpha1.to_radians().sin();
    let c1_ref = clairaut_from_point(ell, rec.phi1_ref, rec.alpha1_ref);

    Ok(RecordMetrics {
        delta_r1: (dx * dx + dy * dy + dz * dz).sqrt(),
        delta_alpha1_arcsec: minimal_angle_diff_deg(res.alpha1, rec.alpha1_ref) * 3600.0,
        delta_c1: c1 - c1_ref,
        max_abs_delta_c: res.diagnostics.max_abs_delta_c,
        max_abs_surface_residual: res.diagnostics.max_abs_surface_residual,
    })
}

/// A maximum together with the identification number that attained it.
/// Ties keep the smallest id so aggregation is order-independent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxEntry {
    pub value: f64,
    pub id: usize,
}

impl MaxEntry {
    fn update(slot: &mut Option<MaxEntry>, value: f64, id: usize) {
        match slot {
            Some(cur) if value < cur.value || (value == cur.value && id >= cur.id) => {}
            _ => *slot = Some(MaxEntry { value, id }),
        }
    }
}

/// Maxima of the record metrics over a set of records.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GroupStats {
    pub count: usize,
    pub skipped: usize,
    pub max_delta_r1: Option<MaxEntry>,
    pub max_abs_delta_alpha1: Option<MaxEntry>,
    pub max_abs_delta_c1: Option<MaxEntry>,
    pub max_max_abs_delta_c: Option<MaxEntry>,
    pub max_max_abs_surface_residual: Option<MaxEntry>,
}

impl GroupStats {
    pub fn add(&mut self, id: usize, m: &RecordMetrics) {
        self.count += 1;
        MaxEntry::update(&mut self.max_delta_r1, m.delta_r1, id);
        MaxEntry::update(
            &mut self.max_abs_delta_alpha1,
            m.delta_alpha1_arcsec.abs(),
            id,
        );
        MaxEntry::update(&mut self.max_abs_delta_c1, m.delta_c1.abs(), id);
        MaxEntry::update(&mut self.max_max_abs_delta_c, m.max_abs_delta_c, id);
        if let Some(s) = m.max_abs_surface_residual {
            MaxEntry::update(&mut self.max_max_abs_surface_residual, s, id);
        }
    }

    pub fn add_skipped(&mut self) {
        self.skipped += 1;
    }

    pub fn merge(&mut self, other: &GroupStats) {
        self.count += other.count;
        self.skipped += other.skipped;
        for (mine, theirs) in [
            (&mut self.max_delta_r1, other.max_delta_r1),
            (&mut self.max_abs_delta_alpha1, other.max_abs_delta_alpha1),
            (&mut self.max_abs_delta_c1, other.max_abs_delta_c1),
            (&mut self.max_max_abs_delta_c, other.max_max_abs_delta_c),
            (
                &mut self.max_max_abs_surface_residual,
                other.max_max_abs_surface_residual,
            ),
        ] {
            if let Some(e) = theirs {
                MaxEntry::update(mine, e.value, e.id);
            }
        }
    }
}

/// Per-group stats plus the overall row. Partial aggregates over disjoint
/// record subsets merge into the same result as a single pass.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Aggregates {
    groups: [GroupStats; 9],
    overall: GroupStats,
}

impl Aggregates {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, group: GroupId, id: usize, metrics: &RecordMetrics) {
        self.groups[(group.value() - 1) as usize].add(id, metrics);
        self.overall.add(id, metrics);
    }

    pub fn add_skipped(&mut self, group: GroupId) {
        self.groups[(group.value() - 1) as usize].add_skipped();
        self.overall.add_skipped();
    }

    pub fn merge(mut self, other: &Aggregates) -> Self {
        for (mine, theirs) in self.groups.iter_mut().zip(other.groups.iter()) {
            mine.merge(theirs);
        }
        self.overall.merge(&other.overall);
        self
    }

    pub fn group(&self, g: GroupId) -> &GroupStats {
        &self.groups[(g.value() - 1) as usize]
    }

    pub fn overall(&self) -> &GroupStats {
        &self.overall
    }
}

/// Fold a stream of classified metrics into aggregates.
pub fn aggregate<I>(metrics: I) -> Aggregates
where
    I: IntoIterator<Item = (GroupId, usize, RecordMetrics)>,
{
    let mut agg = Aggregates::new();
    for (group, id, m) in metrics {
        agg.add(group, id, &m);
    }
    agg
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn metrics(r: f64) -> RecordMetrics {
        RecordMetrics {
            delta_r1: r,
            delta_alpha1_arcsec: -2.0 * r,
            delta_c1: 0.5 * r,
            max_abs_delta_c: r,
            max_abs_surface_residual: Some(r * 1e-10),
        }
    }

    #[test]
    fn parses_constructed_line() {
        let rec = parse_test_line("10 0 30 9.9 1.1 30.2 123456.7", 42).unwrap();
        assert_eq!(rec.id, 42);
        assert_eq!(rec.phi0, 10.0);
        assert_eq!(rec.alpha0, 30.0);
        assert_eq!(rec.s01, 123456.7);
    }

    #[test]
    fn ignores_extra_columns() {
        let short = parse_test_line("10 0 30 9.9 1.1 30.2 123456.7", 1).unwrap();
        let long =
            parse_test_line("10 0 30 9.9 1.1 30.2 123456.7 1.1 654321.0 -9.9e5", 1).unwrap();
        assert_eq!(short, long);
    }

    #[test]
    fn reports_parse_errors_with_position() {
        match parse_test_line("10 0 thirty 9.9 1.1 30.2 1.0", 7) {
            Err(GeodesicError::Parse { line, column, .. }) => {
                assert_eq!(line, 7);
                assert_eq!(column, 3);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_test_line("10 0 30", 9) {
            Err(GeodesicError::Parse { line, column, .. }) => {
                assert_eq!(line, 9);
                assert_eq!(column, 4);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn group_boundaries() {
        assert_eq!(classify_group(1).unwrap().value(), 1);
        assert_eq!(classify_group(100_000).unwrap().value(), 1);
        assert_eq!(classify_group(100_001).unwrap().value(), 2);
        assert_eq!(classify_group(450_001).unwrap().value(), 9);
        assert_eq!(classify_group(500_000).unwrap().value(), 9);
        assert_eq!(classify_group(500_001).unwrap().value(), 9);
        assert!(classify_group(0).is_err());
    }

    #[test]
    fn group_ranges_cover_the_published_set() {
        let mut next = 1;
        for g in GroupId::all() {
            let (lo, hi) = g.id_range();
            assert_eq!(lo, next);
            assert!(hi > lo);
            next = hi + 1;
        }
        assert_eq!(next, PUBLISHED_SET_LEN + 1);
    }

    #[test]
    fn conformance_flags_violations() {
        let rec = TestRecord {
            id: 1,
            phi0: 95.0,
            lam0: 1.0,
            alpha0: 200.0,
            phi1_ref: 0.0,
            lam1_ref: 0.0,
            alpha1_ref: 0.0,
            s01: 3e7,
        };
        assert_eq!(conformance_warnings(&rec).len(), 4);
    }

    #[test]
    fn self_comparison_yields_zero_deltas() {
        let ell = Ellipsoid::wgs84();
        // solve once, then use our own endpoint as the reference
        let rec0 = TestRecord {
            id: 1,
            phi0: 20.0,
            lam0: 0.0,
            alpha0: 40.0,
            phi1_ref: 0.0,
            lam1_ref: 0.0,
            alpha1_ref: 0.0,
            s01: 3e6,
        };
        let prob = DirectProblem::new(GeodeticCoord::new(20.0, 0.0), 40.0, 3e6).with_steps(300);
        let res = solve_direct(&ell, &prob).unwrap();
        let rec = TestRecord {
            phi1_ref: res.end_geodetic.lat,
            lam1_ref: res.end_geodetic.lon,
            alpha1_ref: res.alpha1,
            ..rec0
        };
        let m = evaluate_record(&ell, &rec, 300, CoordinateSystem::Cartesian).unwrap();
        // the reference endpoint is quantized through degrees, so "zero"
        // here means below the conversion noise floor
        assert!(m.delta_r1 < 1e-8, "delta_r1 = {}", m.delta_r1);
        assert!(m.delta_alpha1_arcsec.abs() < 1e-9);
        assert!(m.delta_c1.abs() < 1e-7);
    }

    #[test]
    fn equatorial_reference_matches_closed_form() {
        let ell = Ellipsoid::wgs84();
        let quarter = std::f64::consts::PI * ell.a() / 2.0;
        let rec = TestRecord {
            id: 1,
            phi0: 0.0,
            lam0: 0.0,
            alpha0: 90.0,
            phi1_ref: 0.0,
            lam1_ref: 90.0,
            alpha1_ref: 90.0,
            s01: quarter,
        };
        let m = evaluate_record(&ell, &rec, 1000, CoordinateSystem::Cartesian).unwrap();
        assert!(m.delta_r1 <= 1e-6, "delta_r1 = {}", m.delta_r1);
    }

    #[test]
    fn record_errors_carry_the_id() {
        let ell = Ellipsoid::wgs84();
        let rec = TestRecord {
            id: 55,
            phi0: 89.99,
            lam0: 0.0,
            alpha0: 10.0,
            phi1_ref: 0.0,
            lam1_ref: 0.0,
            alpha1_ref: 0.0,
            s01: 1e6,
        };
        match evaluate_record(&ell, &rec, 100, CoordinateSystem::Geodetic) {
            Err(GeodesicError::Record { id, source }) => {
                assert_eq!(id, 55);
                assert!(matches!(*source, GeodesicError::PoleStart { .. }));
            }
            other => panic!("expected record error, got {other:?}"),
        }
    }

    #[test]
    fn reference_clairaut_defect_is_small_for_true_geodesics() {
        let ell = Ellipsoid::wgs84();
        let prob = DirectProblem::new(GeodeticCoord::new(31.0, 0.0), 52.0, 9e6).with_steps(20000);
        let res = solve_direct(&ell, &prob).unwrap();
        let rec = TestRecord {
            id: 1,
            phi0: 31.0,
            lam0: 0.0,
            alpha0: 52.0,
            phi1_ref: res.end_geodetic.lat,
            lam1_ref: res.end_geodetic.lon,
            alpha1_ref: res.alpha1,
            s01: 9e6,
        };
        assert!(reference_clairaut_defect(&ell, &rec) < 1e-6);
    }

    #[test]
    fn empty_aggregate_is_empty() {
        let agg = aggregate(std::iter::empty());
        assert_eq!(agg.overall().count, 0);
        assert!(agg.overall().max_delta_r1.is_none());
    }

    #[test]
    fn single_record_dominates() {
        let m = metrics(3.5);
        let agg = aggregate([(classify_group(120_000).unwrap(), 120_000, m)]);
        let g2 = agg.group(GroupId::new(2).unwrap());
        assert_eq!(g2.count, 1);
        assert_eq!(g2.max_delta_r1.unwrap().value, 3.5);
        assert_eq!(g2.max_delta_r1.unwrap().id, 120_000);
        assert_eq!(agg.overall().max_abs_delta_alpha1.unwrap().value, 7.0);
    }

    #[test]
    fn merge_equals_single_pass() {
        let items: Vec<_> = (1..=100)
            .map(|i| {
                let id = i * 4999;
                (
                    classify_group(id).unwrap(),
                    id,
                    metrics(((i * 37) % 23) as f64),
                )
            })
            .collect();
        let single = aggregate(items.clone());
        let (left, right) = items.split_at(41);
        let merged = aggregate(left.iter().cloned()).merge(&aggregate(right.iter().cloned()));
        assert_eq!(single, merged);

        // order independence, including argmax ties
        let mut reversed = items;
        reversed.reverse();
        assert_eq!(single, aggregate(reversed));
    }

    #[test]
    fn azimuth_difference_wraps_minimally() {
        let ell = Ellipsoid::wgs84();
        let rec = TestRecord {
            id: 1,
            phi0: 0.0,
            lam0: 0.0,
            alpha0: 90.0,
            phi1_ref: 0.0,
            lam1_ref: 0.001,
            alpha1_ref: 90.0,
            s01: 111.3,
        };
        let m = evaluate_record(&ell, &rec, 16, CoordinateSystem::Cartesian).unwrap();
        assert!(m.delta_alpha1_arcsec.abs() < 3600.0);
        assert_abs_diff_eq!(
            minimal_angle_diff_deg(180.0001, 179.9999) * 3600.0,
            0.72,
            epsilon = 1e-6
        );
    }
}
