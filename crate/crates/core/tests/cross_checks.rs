//! Cross-module checks: equivalence transforms acting on catalog solutions,
//! the slope-field rotation identity, direct evolution tracking closed-form
//! diagnostics, and the CSV re-ingestion path.

use curveflow_core::catalog::verify::{graph_residual, linspace, residual_from_samples};
use curveflow_core::catalog::{
    grim_reaper, grim_reaper_slope, AngenentOval, DVSlopeFamily, DiffusivityModel, DvIndex,
    PdeForm,
};
use curveflow_core::evolve::{evolve_closed, ClosedCurveFlowProblem, Snapshots};
use curveflow_core::geometry::GraphPatch;
use curveflow_core::io::{read_csv_columns, sampled_field_from_long, write_long_csv};
use curveflow_core::specfun::{invert_monotone, Tolerance};
use curveflow_core::transforms::{
    reciprocal_map, reconstruct_graph, rescale_diffusivity, rotate_diffusivity, rotate_slope,
};

use std::f64::consts::{FRAC_PI_2, PI};

/// Rotating the fifth separable slope family by a quarter turn lands on the
/// seventh, after shifting the spatial phase by 3 pi/2.
#[test]
fn dv_slope_families_5_and_7_are_rotations_of_each_other() {
    let t = -0.4f64;
    // family-5 domain at this t: sinh^2 x < e^{0.8}, i.e. |x| < 1.18
    let k5 = DVSlopeFamily::new(DvIndex::K5, 1.0, 0.0, 0.0).unwrap();
    let k7 = DVSlopeFamily::new(DvIndex::K7, 1.0, 1.5 * PI, 0.0).unwrap();
    for i in 0..60 {
        let x = -1.1 + 2.2 * i as f64 / 59.0;
        let u5 = k5.eval(x, t).unwrap();
        if u5.abs() < 1e-3 {
            continue; // rotation law has a pole where the image is vertical
        }
        // the curve of family 5 is sin(y) = e^t sinh(x); rotating by pi/2
        // sends (x, y) to (-y, x)
        let y5 = (t.exp() * x.sinh()).asin();
        let image_x = -y5;
        let rotated_slope = rotate_slope(u5, FRAC_PI_2).unwrap();
        let u7 = k7.eval(image_x, t).unwrap();
        assert!(
            (rotated_slope - u7).abs() <= 1e-10 * (1.0 + u7.abs()),
            "x = {x}: rotated {rotated_slope} vs k7 {u7}"
        );
    }
}

/// A rotated grim reaper still satisfies the graph flow, measured against
/// the functionally rotated diffusivity.
#[test]
fn rotated_grim_reaper_passes_the_residual_check() {
    let alpha = 0.25f64;
    let (sa, ca) = alpha.sin_cos();
    let d_rot = rotate_diffusivity(DiffusivityModel::Isotropic, alpha);
    let tol = Tolerance {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_iterations: 500,
    };
    let y_rotated = move |x_bar: f64, t: f64| -> curveflow_core::Result<f64> {
        // invert x_bar = x cos a - y(x, t) sin a for x, then map
        let x = invert_monotone(
            |x| Ok(x * ca - grim_reaper(1.0, x, t)? * sa),
            x_bar,
            (-1.35, 1.35),
            &tol,
        )?;
        Ok(x * sa + grim_reaper(1.0, x, t)? * ca)
    };
    let scan = graph_residual(
        y_rotated,
        move |s| d_rot.eval(s),
        &linspace(-0.7, 0.7, 21),
        &[0.0, 0.05],
        1e-3,
    )
    .unwrap();
    assert!(scan.max_abs < 1e-5, "rotated residual {}", scan.max_abs);
}

/// Diagonal rescaling of the circle gives the homothetic ellipse, a
/// solution of the correspondingly rescaled diffusivity.
#[test]
fn rescaled_circle_matches_the_ellipse_and_its_diffusivity() {
    let beta = 2.0f64;
    // (x, y) -> (x, y/beta) maps the circle to x^2 + beta^2 y^2 = 2(t0 - t)
    let d_scaled = rescale_diffusivity(DiffusivityModel::Isotropic, 1.0, 1.0 / beta).unwrap();
    let y_scaled = move |x: f64, t: f64| -> curveflow_core::Result<f64> {
        let s = 2.0 * (0.0 - t);
        Ok((s - x * x).sqrt() / beta)
    };
    // pointwise the scaled circle is exactly the homothetic ellipse branch
    for i in 0..=20 {
        let x = -0.6 + 1.2 * i as f64 / 20.0;
        let a = y_scaled(x, -0.5).unwrap();
        let b = curveflow_core::catalog::elliptic_homothetic_branch_y(beta, 0.0, x, -0.5).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
    let scan = graph_residual(
        y_scaled,
        move |s| d_scaled.eval(s),
        &linspace(-0.6, 0.6, 21),
        &[-0.5],
        1e-3,
    )
    .unwrap();
    assert!(scan.max_abs < 1e-5, "rescaled residual {}", scan.max_abs);
}

/// The reciprocal image of a monotone quarter arc of the shrinking circle
/// is a reflected arc of the same circle.
#[test]
fn reciprocal_map_reflects_the_circle_arc() {
    let r: f64 = 1.0; // circle x^2 + y^2 = 1 at t = t0 - 1/2
    let xs = linspace(-0.9 * r, -0.1 * r, 1601);
    let us: Vec<f64> = xs
        .iter()
        .map(|&x| -x / (r * r - x * x).sqrt()) // upper-left arc: u > 0
        .collect();
    let patch = GraphPatch::new(xs.clone(), us, 0.0).unwrap();
    let image = reciprocal_map(&patch, None).unwrap();
    let graph = reconstruct_graph(&image).unwrap();
    // reflected graph differs from y = x by a constant
    let devs: Vec<f64> = graph.ys.iter().zip(&xs).map(|(&yp, &x)| yp - x).collect();
    let mean = devs.iter().sum::<f64>() / devs.len() as f64;
    let spread = devs.iter().map(|d| (d - mean).abs()).fold(0.0, f64::max);
    assert!(spread < 1e-6, "circle arc reflection spread {spread}");
}

/// Evolving the sampled oval tracks its closed-form curvature-ratio decay
/// within 1% until the enclosed area is small.
#[test]
fn closed_flow_tracks_the_oval_diagnostics() {
    let t_start = -(5.0f64).ln();
    let oval = AngenentOval::new(t_start).unwrap().curve(256).unwrap();
    let mut p = ClosedCurveFlowProblem::new(oval, 1.0, None).unwrap();
    p.area_floor = 1e-2;
    p.snapshot_interval = 0.1;
    let res = evolve_closed(&p).unwrap();
    let Snapshots::Curves(snaps) = &res.snapshots else {
        panic!()
    };
    assert!(snaps.len() >= 5);
    for (snap, diag) in snaps.iter().zip(&res.diagnostics) {
        let t = snap.time_stamp;
        if t >= -5e-3 {
            continue; // closed form is singular at extinction
        }
        let exact = (-t).exp();
        let d = diag.expect("closed snapshots carry diagnostics");
        let measured = d.kappa_max / d.kappa_min;
        assert!(
            (measured - exact).abs() <= 0.01 * exact,
            "kappa ratio {measured} vs {exact} at t = {t}"
        );
    }
}

/// Long-format CSV re-ingestion reproduces the in-memory residual of the
/// sampled field to 1e-12 (17-digit serialization round-trips the doubles).
#[test]
fn csv_round_trip_reproduces_the_residual() {
    let c = 1.0;
    let xs = linspace(-1.0, 1.0, 41);
    let ts = linspace(-0.02, 0.02, 5);
    let mut rows = Vec::new();
    for &t in &ts {
        for &x in &xs {
            rows.push(vec![x, grim_reaper(c, x, t).unwrap(), t]);
        }
    }
    let mut buf = Vec::new();
    write_long_csv(&mut buf, &["x", "y", "t"], &rows).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let (header, cols) = read_csv_columns(&text).unwrap();
    assert_eq!(header, vec!["x", "y", "t"]);
    let reread = sampled_field_from_long(&cols[0], &cols[1], &cols[2]).unwrap();
    // in-memory field bypassing serialization
    let xs_col: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let y_col: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    let t_col: Vec<f64> = rows.iter().map(|r| r[2]).collect();
    let direct = sampled_field_from_long(&xs_col, &y_col, &t_col).unwrap();
    let d_of = |s: f64| Ok(1.0 / (1.0 + s * s));
    let r1 = residual_from_samples(&reread, d_of, PdeForm::Graph).unwrap();
    let r2 = residual_from_samples(&direct, d_of, PdeForm::Graph).unwrap();
    assert!(
        (r1.max_abs - r2.max_abs).abs() <= 1e-12,
        "residuals differ: {} vs {}",
        r1.max_abs,
        r2.max_abs
    );
}

/// Slope samples round-trip the same way through the flux-form residual.
#[test]
fn csv_round_trip_slope_form() {
    let xs = linspace(0.3, 1.2, 121);
    let ts = linspace(-0.01, 0.01, 5);
    let mut rows = Vec::new();
    for &t in &ts {
        for &x in &xs {
            rows.push(vec![x, grim_reaper_slope(1.0, x, t).unwrap(), t]);
        }
    }
    let mut buf = Vec::new();
    write_long_csv(&mut buf, &["x", "u", "t"], &rows).unwrap();
    let (_, cols) = read_csv_columns(&String::from_utf8(buf).unwrap()).unwrap();
    let reread = sampled_field_from_long(&cols[0], &cols[1], &cols[2]).unwrap();
    let scan = residual_from_samples(
        &reread,
        |s| Ok(1.0 / (1.0 + s * s)),
        PdeForm::Slope,
    )
    .unwrap();
    // steady tan(x) slope field: residual is pure discretisation error
    assert!(scan.max_abs < 1e-3, "slope residual {}", scan.max_abs);
}
