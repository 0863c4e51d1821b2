//! Residual self-verification: substitute a closed-form solution into its
//! governing PDE with second-order central differences and report the
//! largest absolute residual over a space-time grid.
//!
//! Grids must stay strictly inside the solution's validity domain, separated
//! from singular boundaries by at least ~10 h; the evaluators themselves
//! raise domain errors otherwise.

use crate::catalog::{eval_diffusivity, Family, PdeForm};
use crate::error::{Error, Result};
use crate::exec;

/// Largest absolute PDE residual over a grid, with its location.
#[derive(Debug, Clone, Copy)]
pub struct ResidualScan {
    pub max_abs: f64,
    pub at: (f64, f64),
}

fn fold_scan(points: Vec<Result<(f64, f64, f64)>>) -> Result<ResidualScan> {
    let mut best = ResidualScan {
        max_abs: -1.0,
        at: (f64::NAN, f64::NAN),
    };
    for p in points {
        let (r, x, t) = p?;
        if r > best.max_abs {
            best = ResidualScan {
                max_abs: r,
                at: (x, t),
            };
        }
    }
    if best.max_abs < 0.0 {
        return Err(Error::InsufficientData("empty residual grid".into()));
    }
    Ok(best)
}

/// Residual of y_t = D(y_x) y_xx at one point by central differences.
fn graph_point_residual<Y, D>(y: &Y, d_of: &D, x: f64, t: f64, h: f64) -> Result<f64>
where
    Y: Fn(f64, f64) -> Result<f64>,
    D: Fn(f64) -> Result<f64>,
{
    let y_t = (y(x, t + h)? - y(x, t - h)?) / (2.0 * h);
    let (yl, yc, yr) = (y(x - h, t)?, y(x, t)?, y(x + h, t)?);
    let y_x = (yr - yl) / (2.0 * h);
    let y_xx = (yr - 2.0 * yc + yl) / (h * h);
    Ok(y_t - d_of(y_x)? * y_xx)
}

/// Residual of u_t = (D(u) u_x)_x at one point: conservative central form
/// with D evaluated at the exact half-node slopes.
fn slope_point_residual<U, D>(u: &U, d_of: &D, x: f64, t: f64, h: f64) -> Result<f64>
where
    U: Fn(f64, f64) -> Result<f64>,
    D: Fn(f64) -> Result<f64>,
{
    let u_t = (u(x, t + h)? - u(x, t - h)?) / (2.0 * h);
    let (ul, uc, ur) = (u(x - h, t)?, u(x, t)?, u(x + h, t)?);
    let d_p = d_of(u(x + 0.5 * h, t)?)?;
    let d_m = d_of(u(x - 0.5 * h, t)?)?;
    let flux_div = (d_p * (ur - uc) - d_m * (uc - ul)) / (h * h);
    Ok(u_t - flux_div)
}

/// Max |y_t - D(y_x) y_xx| over the tensor grid xs x ts.
pub fn graph_residual<Y, D>(y: Y, d_of: D, xs: &[f64], ts: &[f64], h: f64) -> Result<ResidualScan>
where
    Y: Fn(f64, f64) -> Result<f64> + Sync,
    D: Fn(f64) -> Result<f64> + Sync,
{
    let points: Vec<(f64, f64)> = xs
        .iter()
        .flat_map(|&x| ts.iter().map(move |&t| (x, t)))
        .collect();
    let scans = exec::map(&points, |&(x, t)| {
        graph_point_residual(&y, &d_of, x, t, h).map(|r| (r.abs(), x, t))
    });
    fold_scan(scans)
}

/// Sequential variant of [`graph_residual`] (benchmark baseline).
pub fn graph_residual_seq<Y, D>(
    y: Y,
    d_of: D,
    xs: &[f64],
    ts: &[f64],
    h: f64,
) -> Result<ResidualScan>
where
    Y: Fn(f64, f64) -> Result<f64>,
    D: Fn(f64) -> Result<f64>,
{
    let points: Vec<(f64, f64)> = xs
        .iter()
        .flat_map(|&x| ts.iter().map(move |&t| (x, t)))
        .collect();
    let scans = exec::map_seq(&points, |&(x, t)| {
        graph_point_residual(&y, &d_of, x, t, h).map(|r| (r.abs(), x, t))
    });
    fold_scan(scans)
}

/// Max |u_t - (D(u) u_x)_x| over the tensor grid xs x ts.
pub fn slope_residual<U, D>(u: U, d_of: D, xs: &[f64], ts: &[f64], h: f64) -> Result<ResidualScan>
where
    U: Fn(f64, f64) -> Result<f64> + Sync,
    D: Fn(f64) -> Result<f64> + Sync,
{
    let points: Vec<(f64, f64)> = xs
        .iter()
        .flat_map(|&x| ts.iter().map(move |&t| (x, t)))
        .collect();
    let scans = exec::map(&points, |&(x, t)| {
        slope_point_residual(&u, &d_of, x, t, h).map(|r| (r.abs(), x, t))
    });
    fold_scan(scans)
}

/// Sequential variant of [`slope_residual`] (benchmark baseline).
pub fn slope_residual_seq<U, D>(
    u: U,
    d_of: D,
    xs: &[f64],
    ts: &[f64],
    h: f64,
) -> Result<ResidualScan>
where
    U: Fn(f64, f64) -> Result<f64>,
    D: Fn(f64) -> Result<f64>,
{
    let points: Vec<(f64, f64)> = xs
        .iter()
        .flat_map(|&x| ts.iter().map(move |&t| (x, t)))
        .collect();
    let scans = exec::map_seq(&points, |&(x, t)| {
        slope_point_residual(&u, &d_of, x, t, h).map(|r| (r.abs(), x, t))
    });
    fold_scan(scans)
}

/// Residual of a catalog family on a grid, in its preferred PDE form.
pub fn verify_residual(family: &Family, xs: &[f64], ts: &[f64], h: f64) -> Result<ResidualScan> {
    let model = family.diffusivity();
    let d_of = move |s: f64| eval_diffusivity(&model, s).map(|(d, _)| d);
    match family.pde() {
        PdeForm::Graph => graph_residual(
            |x, t| family.graph_value(x, t),
            d_of,
            xs,
            ts,
            h,
        ),
        PdeForm::Slope => slope_residual(
            |x, t| family.slope_value(x, t),
            d_of,
            xs,
            ts,
            h,
        ),
    }
}

/// Residuals at h and h/2 plus the measured convergence order
/// log2(r(h) / r(h/2)); second-order stencils give order ~2.
pub fn convergence_order(
    family: &Family,
    xs: &[f64],
    ts: &[f64],
    h: f64,
) -> Result<(f64, f64, f64)> {
    let r1 = verify_residual(family, xs, ts, h)?.max_abs;
    let r2 = verify_residual(family, xs, ts, 0.5 * h)?.max_abs;
    Ok((r1, r2, (r1 / r2).log2()))
}

/// Sampled space-time field on a tensor grid (uniform in both directions),
/// as re-ingested from long-format CSV. `values[i][j]` is the field at
/// (xs[i], ts[j]).
#[derive(Debug, Clone)]
pub struct SampledField {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl SampledField {
    fn spacing(grid: &[f64], what: &str) -> Result<f64> {
        if grid.len() < 3 {
            return Err(Error::InsufficientData(format!(
                "need at least 3 {what} levels for central differences"
            )));
        }
        let h = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
        if grid
            .windows(2)
            .any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs())
        {
            return Err(Error::invalid(format!("{what} grid must be uniform")));
        }
        Ok(h)
    }
}

/// Central-difference residual computed purely from sampled data (the CSV
/// re-ingestion path). Interior nodes only. For the slope form, half-node
/// diffusivities use the average of the neighbouring samples, keeping the
/// scheme second order without re-evaluating the closed form.
pub fn residual_from_samples(
    field: &SampledField,
    d_of: impl Fn(f64) -> Result<f64>,
    form: PdeForm,
) -> Result<ResidualScan> {
    let hx = SampledField::spacing(&field.xs, "x")?;
    let ht = SampledField::spacing(&field.ts, "t")?;
    let v = &field.values;
    let mut best = ResidualScan {
        max_abs: -1.0,
        at: (f64::NAN, f64::NAN),
    };
    for i in 1..field.xs.len() - 1 {
        for j in 1..field.ts.len() - 1 {
            let f_t = (v[i][j + 1] - v[i][j - 1]) / (2.0 * ht);
            let r = match form {
                PdeForm::Graph => {
                    let f_x = (v[i + 1][j] - v[i - 1][j]) / (2.0 * hx);
                    let f_xx = (v[i + 1][j] - 2.0 * v[i][j] + v[i - 1][j]) / (hx * hx);
                    f_t - d_of(f_x)? * f_xx
                }
                PdeForm::Slope => {
                    let d_p = d_of(0.5 * (v[i + 1][j] + v[i][j]))?;
                    let d_m = d_of(0.5 * (v[i][j] + v[i - 1][j]))?;
                    f_t - (d_p * (v[i + 1][j] - v[i][j]) - d_m * (v[i][j] - v[i - 1][j]))
                        / (hx * hx)
                }
            };
            if r.abs() > best.max_abs {
                best = ResidualScan {
                    max_abs: r.abs(),
                    at: (field.xs[i], field.ts[j]),
                };
            }
        }
    }
    if best.max_abs < 0.0 {
        return Err(Error::InsufficientData("no interior nodes".into()));
    }
    Ok(best)
}

/// Evenly spaced grid of n points on [lo, hi] inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}
