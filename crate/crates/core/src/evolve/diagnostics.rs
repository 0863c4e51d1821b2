//! Post-run diagnostics: wave speed from a tracked trace, extinction time
//! from the linear area decay of the curvature flow.

use crate::error::{Error, Result};
use crate::evolve::{FlowResult, Snapshots};

use serde::{Deserialize, Serialize};

/// Least-squares speed of the solution value tracked at a fixed abscissa
/// (a vertical level-set trace).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WaveSpeedFit {
    pub speed: f64,
    /// Largest absolute deviation from the linear fit.
    pub residual: f64,
    /// Abscissa of the tracked node.
    pub reference_x: f64,
}

fn linear_fit(ts: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = ts.len() as f64;
    let sx: f64 = ts.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = ts.iter().map(|x| x * x).sum();
    let sxy: f64 = ts.iter().zip(ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    (slope, (sy - slope * sx) / n)
}

/// Measure the vertical translation speed of a quasi-steady graph flow.
/// Errors when fewer than 3 snapshots are available or when the fit
/// residual exceeds 5% of the total displacement (not steady).
pub fn measure_wave_speed(result: &FlowResult) -> Result<WaveSpeedFit> {
    let Snapshots::Graphs(snaps) = &result.snapshots else {
        return Err(Error::InsufficientData(
            "wave speed needs graph snapshots".into(),
        ));
    };
    if snaps.len() < 3 {
        return Err(Error::InsufficientData(
            "wave speed needs at least 3 snapshots".into(),
        ));
    }
    let mid = snaps[0].len() / 2;
    let reference_x = snaps[0].xs[mid];
    let ts: Vec<f64> = snaps.iter().map(|s| s.time_stamp).collect();
    let ys: Vec<f64> = snaps.iter().map(|s| s.ys[mid]).collect();
    let (speed, intercept) = linear_fit(&ts, &ys);
    let residual = ts
        .iter()
        .zip(&ys)
        .map(|(&t, &y)| (y - (intercept + speed * t)).abs())
        .fold(0.0, f64::max);
    let displacement = (ys[ys.len() - 1] - ys[0]).abs();
    if displacement > 0.0 && residual > 0.05 * displacement {
        return Err(Error::FitFailure(format!(
            "trace is not steady: fit residual {residual:.3e} exceeds 5% of displacement {displacement:.3e}"
        )));
    }
    Ok(WaveSpeedFit {
        speed,
        residual,
        reference_x,
    })
}

/// Extinction forecast from the linear area decay (the enclosed area of a
/// convex curvature flow shrinks at constant rate 2 pi).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExtinctionFit {
    /// Extrapolated time at which the area reaches zero.
    pub time: f64,
    /// Fitted d(area)/dt; -2 pi for convex flows.
    pub area_slope: f64,
}

/// Extrapolate the extinction time from closed-curve snapshots. Errors when
/// the run shows insufficient shrinkage (< 5% area drop, or growth).
pub fn detect_extinction(result: &FlowResult) -> Result<ExtinctionFit> {
    let Snapshots::Curves(snaps) = &result.snapshots else {
        return Err(Error::InsufficientData(
            "extinction detection needs closed-curve snapshots".into(),
        ));
    };
    if snaps.len() < 3 {
        return Err(Error::InsufficientData(
            "extinction detection needs at least 3 snapshots".into(),
        ));
    }
    let ts: Vec<f64> = snaps.iter().map(|s| s.time_stamp).collect();
    let mut areas = Vec::with_capacity(snaps.len());
    for s in snaps {
        areas.push(s.signed_area()?.abs());
    }
    let drop = areas[0] - areas[areas.len() - 1];
    if !(areas[0] > 0.0) || drop < 0.05 * areas[0] {
        return Err(Error::InsufficientData(format!(
            "insufficient shrinkage: area went {} -> {}",
            areas[0],
            areas[areas.len() - 1]
        )));
    }
    let (slope, intercept) = linear_fit(&ts, &areas);
    if !(slope < 0.0) {
        return Err(Error::InsufficientData("area is not decreasing".into()));
    }
    Ok(ExtinctionFit {
        time: -intercept / slope,
        area_slope: slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::grim_reaper;
    use crate::catalog::verify::linspace;
    use crate::evolve::{ClosedCurveFlowProblem, evolve_closed};
    use crate::geometry::{GraphPatch, PlaneCurve};

    fn reaper_snapshots(c: f64) -> FlowResult {
        let half = 0.7 * std::f64::consts::FRAC_PI_2 / c;
        let xs = linspace(-half, half, 101);
        let snaps: Vec<GraphPatch> = (0..6)
            .map(|k| {
                let t = 0.05 * k as f64;
                let ys = xs.iter().map(|&x| grim_reaper(c, x, t).unwrap()).collect();
                GraphPatch::new(xs.clone(), ys, t).unwrap()
            })
            .collect();
        FlowResult::new(Snapshots::Graphs(snaps), vec![None; 6])
    }

    #[test]
    fn translating_wave_speed_measured() {
        for c in [1.0, 2.0] {
            let fit = measure_wave_speed(&reaper_snapshots(c)).unwrap();
            assert!(
                (fit.speed - c).abs() < 0.01 * c,
                "speed {} for c = {c}",
                fit.speed
            );
        }
    }

    #[test]
    fn stationary_line_has_zero_speed() {
        let xs = linspace(0.0, 1.0, 11);
        let snaps: Vec<GraphPatch> = (0..4)
            .map(|k| {
                let ys = xs.iter().map(|&x| 2.0 * x).collect();
                GraphPatch::new(xs.clone(), ys, 0.1 * k as f64).unwrap()
            })
            .collect();
        let res = FlowResult::new(Snapshots::Graphs(snaps), vec![None; 4]);
        let fit = measure_wave_speed(&res).unwrap();
        assert_eq!(fit.speed, 0.0);
    }

    #[test]
    fn non_steady_trace_is_rejected() {
        let xs = linspace(0.0, 1.0, 11);
        let snaps: Vec<GraphPatch> = (0..5)
            .map(|k| {
                let t = k as f64;
                let ys = xs.iter().map(|_| (t * t) * 0.5).collect();
                GraphPatch::new(xs.clone(), ys, t).unwrap()
            })
            .collect();
        let res = FlowResult::new(Snapshots::Graphs(snaps), vec![None; 5]);
        assert!(matches!(
            measure_wave_speed(&res),
            Err(Error::FitFailure(_))
        ));
    }

    #[test]
    fn circle_extinction_forecast() {
        let c = PlaneCurve::ellipse(1.0, 1.0, 128, 0.0).unwrap();
        let mut p = ClosedCurveFlowProblem::new(c, 1e-4, None).unwrap();
        p.area_floor = 5e-3;
        p.snapshot_interval = 0.03;
        let res = evolve_closed(&p).unwrap();
        let fit = detect_extinction(&res).unwrap();
        assert!(
            (fit.time - 0.5).abs() < 0.005,
            "extinction time {}",
            fit.time
        );
        let expected = -2.0 * std::f64::consts::PI;
        assert!(
            (fit.area_slope - expected).abs() < 0.02 * expected.abs(),
            "area slope {}",
            fit.area_slope
        );
    }

    #[test]
    fn already_extinct_input_errors() {
        // constant snapshots: no shrinkage
        let c = PlaneCurve::ellipse(0.05, 0.05, 64, 0.0).unwrap();
        let snaps = vec![c.clone(), c.clone(), c];
        let res = FlowResult::new(Snapshots::Curves(snaps), vec![None; 3]);
        assert!(matches!(
            detect_extinction(&res),
            Err(Error::InsufficientData(_))
        ));
    }
}
