//! The shrinking oval: the closed convex non-circular exact flow
//! cosh(y) = exp(-t) cos(x), in the canonical frame with extinction at t = 0.

use crate::error::{Error, Result};
use crate::geometry::PlaneCurve;

use serde::{Deserialize, Serialize};

/// One time slice of the oval, t < 0.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AngenentOval {
    pub t: f64,
}

/// Closed-form diagnostics of the oval at a fixed time.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OvalDiagnostics {
    pub x_max: f64,
    pub y_max: f64,
    pub kappa_max: f64,
    pub kappa_min: f64,
    pub eccentricity: f64,
}

impl AngenentOval {
    pub fn new(t: f64) -> Result<Self> {
        if !(t < 0.0) {
            return Err(Error::Extinct { t0: 0.0, t });
        }
        Ok(AngenentOval { t })
    }

    /// Half-width along x: arccos(exp(t)).
    pub fn x_max(&self) -> f64 {
        self.t.exp().acos()
    }

    /// Half-height along y: arccosh(exp(-t)).
    pub fn y_max(&self) -> f64 {
        (-self.t).exp().acosh()
    }

    /// Upper branch y(x) >= 0 of cosh(y) = exp(-t) cos(x):
    /// y = ln(cos x + sqrt(cos^2 x - exp(2t))) - t. The lower branch is -y.
    pub fn branch_y(&self, x: f64) -> Result<f64> {
        let xm = self.x_max();
        if !(x.abs() <= xm) {
            return Err(Error::domain("|x| <= arccos(exp(t))", x));
        }
        let c = x.cos();
        let disc = (c * c - (2.0 * self.t).exp()).max(0.0);
        Ok((c + disc.sqrt()).ln() - self.t)
    }

    /// Slope of the upper branch, y_x = -sin(x)/sqrt(cos^2 x - exp(2t)).
    pub fn slope(&self, x: f64) -> Result<f64> {
        let xm = self.x_max();
        if !(x.abs() < xm) {
            return Err(Error::domain("|x| < arccos(exp(t))", x));
        }
        let c = x.cos();
        let disc = c * c - (2.0 * self.t).exp();
        Ok(-x.sin() / disc.sqrt())
    }

    /// Curvature at abscissa x: exp(-t) cos(x) / sqrt(exp(-2t) - 1).
    pub fn kappa(&self, x: f64) -> f64 {
        (-self.t).exp() * x.cos() / ((-2.0 * self.t).exp() - 1.0).sqrt()
    }

    /// Closed-form extrema and eccentricity. The ratio
    /// kappa_max / kappa_min equals exp(-t) identically.
    pub fn diagnostics(&self) -> OvalDiagnostics {
        let root = ((-2.0 * self.t).exp() - 1.0).sqrt();
        let x_max = self.x_max();
        let y_max = self.y_max();
        let ratio = x_max / y_max;
        OvalDiagnostics {
            x_max,
            y_max,
            kappa_max: (-self.t).exp() / root,
            kappa_min: 1.0 / root,
            eccentricity: (1.0 - ratio * ratio).max(0.0).sqrt(),
        }
    }

    /// Sample the full oval counterclockwise with ~n vertices, clustered
    /// near the waist where the tangent turns vertical.
    pub fn curve(&self, n: usize) -> Result<PlaneCurve> {
        let half = (n / 2).max(8);
        let xm = self.x_max();
        let mut vertices = Vec::with_capacity(2 * half - 2);
        // upper branch, right waist to left waist
        for j in 0..half {
            let theta = std::f64::consts::PI * j as f64 / (half - 1) as f64;
            let x = xm * theta.cos();
            vertices.push((x, self.branch_y(x)?));
        }
        // lower branch back, excluding the duplicated waist points
        for j in 1..half - 1 {
            let theta = std::f64::consts::PI * (half - 1 - j) as f64 / (half - 1) as f64;
            let x = xm * theta.cos();
            vertices.push((x, -self.branch_y(x)?));
        }
        PlaneCurve::new(vertices, true, self.t)
    }
}

/// Upper-branch value of the oval at (t, x); see [`AngenentOval::branch_y`].
pub fn angenent_oval_branch(t: f64, x: f64) -> Result<f64> {
    AngenentOval::new(t)?.branch_y(x)
}

/// Closed-form diagnostics at time t.
pub fn angenent_oval_diagnostics(t: f64) -> Result<OvalDiagnostics> {
    Ok(AngenentOval::new(t)?.diagnostics())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn implicit_relation_holds_along_the_branch() {
        let t = -(5.0f64).ln();
        let oval = AngenentOval::new(t).unwrap();
        let xm = oval.x_max();
        for i in 0..200 {
            let x = -0.999 * xm + 1.998 * xm * i as f64 / 199.0;
            let y = oval.branch_y(x).unwrap();
            assert!(y >= 0.0);
            let resid = y.cosh() - (-t).exp() * x.cos();
            assert!(resid.abs() < 1e-12, "residual {resid} at x = {x}");
        }
    }

    #[test]
    fn tip_and_waist() {
        // cosh y(0) = exp(-t) = 5 for t = -ln 5
        let t = -(5.0f64).ln();
        let oval = AngenentOval::new(t).unwrap();
        let y0 = oval.branch_y(0.0).unwrap();
        assert_abs_diff_eq!(y0.cosh(), 5.0, epsilon = 1e-12);
        // waist: y -> 0 as x -> x_max
        let y_waist = oval.branch_y(oval.x_max()).unwrap();
        assert!(y_waist.abs() < 1e-7, "waist y = {y_waist}");
    }

    #[test]
    fn diagnostics_at_minus_ln5() {
        let d = angenent_oval_diagnostics(-(5.0f64).ln()).unwrap();
        assert_abs_diff_eq!(d.x_max, 1.369_438_406_004_566, epsilon = 1e-12);
        assert_abs_diff_eq!(d.y_max, 2.292_431_669_561_178, epsilon = 1e-12);
        assert_abs_diff_eq!(d.kappa_max / d.kappa_min, 5.0, epsilon = 1e-13);
        assert_abs_diff_eq!(d.eccentricity, 0.801_963_000_016_653, epsilon = 1e-10);
    }

    #[test]
    fn curvature_ratio_is_exponential_in_time() {
        for t in [-5.0, -2.0, -1.0, -0.1] {
            let d = angenent_oval_diagnostics(t).unwrap();
            assert!(
                (d.kappa_max / d.kappa_min - (-t).exp()).abs() < 1e-12,
                "ratio identity failed at t = {t}"
            );
        }
    }

    #[test]
    fn early_time_asymptote_is_two_grim_reapers() {
        // y ~ -(t - ln cos x - ln 2) for t << 0
        let t = -10.0;
        let x = 0.3;
        let y = angenent_oval_branch(t, x).unwrap();
        let reaper = -t + x.cos().ln() + std::f64::consts::LN_2;
        assert!((y - reaper).abs() < 1e-3, "diff {}", (y - reaper).abs());
    }

    #[test]
    fn eccentricity_small_time_leading_term() {
        let d = angenent_oval_diagnostics(-0.01).unwrap();
        assert_abs_diff_eq!(d.eccentricity, 0.081_513_695_367_9, epsilon = 1e-9);
        assert!((d.eccentricity - 0.08147).abs() < 1e-4);
        // the sqrt(2|t|/3) leading term carries an O(|t|) relative remainder
        let lead = (2.0 * 0.01f64 / 3.0).sqrt();
        assert!((d.eccentricity / lead - 1.0).abs() < 3.0 * 0.01);
        // much closer at |t| = 1e-4
        let d = angenent_oval_diagnostics(-1e-4).unwrap();
        let lead = (2.0 * 1e-4f64 / 3.0).sqrt();
        assert!((d.eccentricity / lead - 1.0).abs() < 1e-3);
    }

    #[test]
    fn extinct_queries_fail() {
        assert!(AngenentOval::new(0.0).is_err());
        assert!(angenent_oval_branch(0.5, 0.0).is_err());
        let oval = AngenentOval::new(-1.0).unwrap();
        assert!(oval.branch_y(2.0).is_err());
    }

    #[test]
    fn sampled_curve_is_closed_and_simple() {
        let c = AngenentOval::new(-(5.0f64).ln()).unwrap().curve(512).unwrap();
        assert!(c.closed);
        assert!(c.signed_area().unwrap() > 0.0);
    }
}
