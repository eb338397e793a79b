//! Rendering of results as plain-text tables, CSV, and GeoJSON.
//!
//! Degrees are printed with 12 decimal places and meters with 9, matching
//! the granularity of the reference data. Table and CSV renderings of the
//! same run must contain identical numbers, so both go through the same
//! row formatter.

use geodesic_ivp::{DirectResult, TraceSample};

pub fn deg(x: f64) -> String {
    format!("{x:.12}")
}

pub fn meters(x: f64) -> String {
    format!("{x:.9}")
}

pub fn residual(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn solve_report(res: &DirectResult) -> String {
    let mut out = String::new();
    out.push_str(&format!("lat1 = {} deg\n", deg(res.end_geodetic.lat)));
    out.push_str(&format!("lon1 = {} deg\n", deg(res.end_geodetic.lon)));
    out.push_str(&format!("azi1 = {} deg\n", deg(res.alpha1)));
    out.push_str(&format!(
        "x1 = {} m\ny1 = {} m\nz1 = {} m\n",
        meters(res.end_cartesian.x),
        meters(res.end_cartesian.y),
        meters(res.end_cartesian.z)
    ));
    let d = &res.diagnostics;
    out.push_str(&format!("clairaut_c0 = {} m\n", meters(d.clairaut_c0)));
    out.push_str(&format!(
        "max_abs_delta_c = {} m\n",
        residual(d.max_abs_delta_c)
    ));
    if let Some(s) = d.max_abs_surface_residual {
        out.push_str(&format!("max_abs_surface_residual = {}\n", residual(s)));
    }
    if let Some(t) = d.max_abs_tangency_residual {
        out.push_str(&format!("max_abs_tangency_residual = {}\n", residual(t)));
    }
    if d.warnings.is_empty() {
        out.push_str("warnings: none\n");
    } else {
        for w in &d.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
    }
    out
}

const TRACE_COLUMNS: [&str; 9] = [
    "s",
    "lat",
    "lon",
    "azimuth",
    "x",
    "y",
    "z",
    "delta_c",
    "lon_unwrapped",
];

fn trace_row(t: &TraceSample) -> [String; 9] {
    [
        meters(t.s),
        deg(t.geodetic.lat),
        deg(t.geodetic.lon),
        deg(t.alpha),
        meters(t.position.x),
        meters(t.position.y),
        meters(t.position.z),
        residual(t.delta_c),
        deg(t.lon_unwrapped),
    ]
}

pub fn trace_csv(samples: &[TraceSample]) -> String {
    let mut out = TRACE_COLUMNS.join(",");
    out.push('\n');
    for t in samples {
        out.push_str(&trace_row(t).join(","));
        out.push('\n');
    }
    out
}

pub fn trace_table(samples: &[TraceSample]) -> String {
    let rows: Vec<[String; 9]> = samples.iter().map(trace_row).collect();
    let mut widths: Vec<usize> = TRACE_COLUMNS.iter().map(|c| c.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for (i, c) in TRACE_COLUMNS.iter().enumerate() {
        out.push_str(&format!("{:>width$} ", c, width = widths[i]));
    }
    out.push('\n');
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            out.push_str(&format!("{:>width$} ", cell, width = widths[i]));
        }
        out.push('\n');
    }
    out
}

pub fn trace_geojson(samples: &[TraceSample]) -> String {
    let coordinates: Vec<serde_json::Value> = samples
        .iter()
        .map(|t| serde_json::json!([t.geodetic.lon, t.geodetic.lat]))
        .collect();
    let feature = serde_json::json!({
        "type": "Feature",
        "geometry": {
            "type": "LineString",
            "coordinates": coordinates,
        },
        "properties": {
            "s": samples.iter().map(|t| t.s).collect::<Vec<_>>(),
            "azimuth": samples.iter().map(|t| t.alpha).collect::<Vec<_>>(),
            "delta_c": samples.iter().map(|t| t.delta_c).collect::<Vec<_>>(),
            "lon_unwrapped": samples.iter().map(|t| t.lon_unwrapped).collect::<Vec<_>>(),
        },
    });
    let collection = serde_json::json!({
        "type": "FeatureCollection",
        "features": [feature],
    });
    let mut out = serde_json::to_string_pretty(&collection).expect("JSON rendering cannot fail");
    out.push('\n');
    out
}
