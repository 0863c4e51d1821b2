//! CSV and JSON serialization.
//!
//! CSV is RFC-4180 with a header row and 17-significant-digit decimals, so
//! every f64 round-trips bit-exactly. Curves serialize to two-column CSV
//! (x, y) or to JSON carrying the closed flag and time stamp; evolution
//! output uses the long format with a trailing t column.

use crate::catalog::verify::SampledField;
use crate::error::{Error, Result};
use crate::geometry::{GraphPatch, PlaneCurve};
use crate::reductions::SimilarityProfile;

use std::io::Write;

/// 17 significant digits: enough to reproduce the exact binary double.
pub fn format_g17(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_f64(token: &str) -> Result<f64> {
    token
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("not a number: {token:?}")))
}

/// Write a curve as two-column CSV (header `x,y`).
pub fn write_curve_csv<W: Write>(w: &mut W, curve: &PlaneCurve) -> Result<()> {
    writeln!(w, "x,y").map_err(|e| Error::Parse(e.to_string()))?;
    for &(x, y) in &curve.vertices {
        writeln!(w, "{},{}", format_g17(x), format_g17(y))
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(())
}

/// Write a graph patch as two-column CSV with a caller-named value column.
pub fn write_patch_csv<W: Write>(w: &mut W, patch: &GraphPatch, value_name: &str) -> Result<()> {
    writeln!(w, "x,{value_name}").map_err(|e| Error::Parse(e.to_string()))?;
    for (x, y) in patch.xs.iter().zip(&patch.ys) {
        writeln!(w, "{},{}", format_g17(*x), format_g17(*y))
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(())
}

/// Write rows in long format with the given header (e.g. `x,y,t` or
/// `x,y,u,t`).
pub fn write_long_csv<W: Write>(w: &mut W, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    writeln!(w, "{}", header.join(",")).map_err(|e| Error::Parse(e.to_string()))?;
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::invalid("row width does not match header"));
        }
        let line = row
            .iter()
            .map(|v| format_g17(*v))
            .collect::<Vec<_>>()
            .join(",");
        writeln!(w, "{line}").map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(())
}

/// Write a similarity profile as (rho, F) CSV with `#`-prefixed header
/// metadata (model, boundary value, shooting parameter, tolerance).
pub fn write_profile_csv<W: Write>(w: &mut W, profile: &SimilarityProfile) -> Result<()> {
    writeln!(w, "# model: {}", profile.model.description())
        .and_then(|_| writeln!(w, "# boundary_value: {}", format_g17(profile.boundary_value)))
        .and_then(|_| writeln!(w, "# shoot_param: {}", format_g17(profile.shoot_param)))
        .and_then(|_| {
            writeln!(
                w,
                "# tol: abs={:e} rel={:e}",
                profile.tol.abs_tol, profile.tol.rel_tol
            )
        })
        .and_then(|_| writeln!(w, "rho,F"))
        .map_err(|e| Error::Parse(e.to_string()))?;
    for (r, f) in profile.rho.iter().zip(&profile.f) {
        writeln!(w, "{},{}", format_g17(*r), format_g17(*f))
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(())
}

/// Parse numeric CSV: returns the header names and the columns. Lines
/// starting with `#` are skipped.
pub fn read_csv_columns(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::Parse("empty CSV".into()))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut columns = vec![Vec::new(); header.len()];
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(Error::Parse(format!(
                "row has {} fields, header has {}",
                fields.len(),
                header.len()
            )));
        }
        for (col, field) in columns.iter_mut().zip(fields) {
            col.push(parse_f64(field)?);
        }
    }
    if columns[0].is_empty() {
        return Err(Error::Parse("CSV has no data rows".into()));
    }
    Ok((header, columns))
}

/// Read a curve from (x, y) CSV; closedness and time stamp are supplied by
/// the caller (the CSV carries only coordinates).
pub fn read_curve_csv(text: &str, closed: bool, time_stamp: f64) -> Result<PlaneCurve> {
    let (header, cols) = read_csv_columns(text)?;
    let ix = header
        .iter()
        .position(|h| h == "x")
        .ok_or_else(|| Error::Parse("missing x column".into()))?;
    let iy = header
        .iter()
        .position(|h| h == "y")
        .ok_or_else(|| Error::Parse("missing y column".into()))?;
    let vertices = cols[ix]
        .iter()
        .zip(&cols[iy])
        .map(|(&x, &y)| (x, y))
        .collect();
    PlaneCurve::new(vertices, closed, time_stamp)
}

/// Rebuild a tensor-product space-time field from long-format columns
/// (x, value, t): rows must cover every (x, t) pair exactly once.
pub fn sampled_field_from_long(
    xs_col: &[f64],
    value_col: &[f64],
    ts_col: &[f64],
) -> Result<SampledField> {
    let mut ts: Vec<f64> = ts_col.to_vec();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let mut xs: Vec<f64> = xs_col.to_vec();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() * ts.len() != xs_col.len() {
        return Err(Error::Parse(format!(
            "long-format rows ({}) do not form a {} x {} tensor grid",
            xs_col.len(),
            xs.len(),
            ts.len()
        )));
    }
    let mut values = vec![vec![f64::NAN; ts.len()]; xs.len()];
    for ((&x, &v), &t) in xs_col.iter().zip(value_col).zip(ts_col) {
        let i = xs.binary_search_by(|p| p.total_cmp(&x)).unwrap();
        let j = ts.binary_search_by(|p| p.total_cmp(&t)).unwrap();
        values[i][j] = v;
    }
    if values.iter().flatten().any(|v| v.is_nan()) {
        return Err(Error::Parse("duplicate or missing grid rows".into()));
    }
    Ok(SampledField { xs, ts, values })
}

/// JSON text for a curve (vertices, closed flag, time stamp); stable key
/// order, shortest round-trip floats.
pub fn curve_to_json(curve: &PlaneCurve) -> String {
    serde_json::to_string_pretty(curve).expect("serializable")
}

pub fn curve_from_json(text: &str) -> Result<PlaneCurve> {
    let curve: PlaneCurve =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    PlaneCurve::new(curve.vertices, curve.closed, curve.time_stamp)
}
