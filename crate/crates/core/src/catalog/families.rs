//! Symmetry-reduction families: the grim reaper travelling wave, the
//! shrinking circle, the separable slope fields, and the homothetic ellipse.

use crate::error::{Error, Result};
use crate::geometry::PlaneCurve;

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

/// Grim reaper travelling wave y = c t - ln(cos(c x))/c, confined between
/// the vertical asymptotes c x = +/- pi/2.
pub fn grim_reaper(c: f64, x: f64, t: f64) -> Result<f64> {
    if c == 0.0 {
        return Err(Error::invalid("grim reaper needs c != 0"));
    }
    let cx = c * x;
    if !(cx.abs() < FRAC_PI_2) {
        return Err(Error::domain("|c*x| < pi/2", cx));
    }
    Ok(c * t - cx.cos().ln() / c)
}

/// Slope of the grim reaper, u = tan(c x).
pub fn grim_reaper_slope(c: f64, x: f64, _t: f64) -> Result<f64> {
    if c == 0.0 {
        return Err(Error::invalid("grim reaper needs c != 0"));
    }
    let cx = c * x;
    if !(cx.abs() < FRAC_PI_2) {
        return Err(Error::domain("|c*x| < pi/2", cx));
    }
    Ok(cx.tan())
}

/// Distance between the two asymptotes, pi/c for unit anisotropy factor.
pub fn grim_reaper_asymptote_spacing(c: f64) -> f64 {
    std::f64::consts::PI / c.abs()
}

/// Radius of the homothetically shrinking circle r = sqrt(2 (t0 - t)).
pub fn shrinking_circle(t0: f64, t: f64) -> Result<f64> {
    if t >= t0 {
        return Err(Error::Extinct { t0, t });
    }
    Ok((2.0 * (t0 - t)).sqrt())
}

/// Upper branch of the shrinking circle as a graph, y = sqrt(2(t0-t) - x^2).
pub fn shrinking_circle_branch_y(t0: f64, x: f64, t: f64) -> Result<f64> {
    let r = shrinking_circle(t0, t)?;
    if !(x.abs() < r) {
        return Err(Error::domain("|x| < sqrt(2*(t0 - t))", x));
    }
    Ok((r * r - x * x).sqrt())
}

/// Homothetic ellipse x^2 + beta^2 y^2 = 2 (t0 - t), sampled
/// counterclockwise. This is the form whose graph branches satisfy
/// y_t = y_xx / (1 + (beta y_x)^2); the anisotropy factor B then varies
/// between 1 and beta^(-2).
pub fn elliptic_homothetic(beta: f64, t0: f64, t: f64, n: usize) -> Result<PlaneCurve> {
    if !(beta > 0.0) {
        return Err(Error::invalid("beta must be positive"));
    }
    let a = shrinking_circle(t0, t)?;
    PlaneCurve::ellipse(a, a / beta, n, t)
}

/// Upper graph branch of the homothetic ellipse.
pub fn elliptic_homothetic_branch_y(beta: f64, t0: f64, x: f64, t: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::invalid("beta must be positive"));
    }
    let s = 2.0 * (t0 - t);
    if t >= t0 {
        return Err(Error::Extinct { t0, t });
    }
    if !(x * x < s) {
        return Err(Error::domain("x^2 < 2*(t0 - t)", x));
    }
    Ok((s - x * x).sqrt() / beta)
}

/// Index into the separable slope fields (the complex-valued fourth member
/// is excluded at the type level).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DvIndex {
    K1,
    K2,
    K3,
    K5,
    K6,
    K7,
}

impl DvIndex {
    pub fn from_u8(k: u8) -> Result<Self> {
        match k {
            1 => Ok(DvIndex::K1),
            2 => Ok(DvIndex::K2),
            3 => Ok(DvIndex::K3),
            5 => Ok(DvIndex::K5),
            6 => Ok(DvIndex::K6),
            7 => Ok(DvIndex::K7),
            4 => Err(Error::invalid(
                "family 4 is complex-valued and not representable",
            )),
            other => Err(Error::invalid(format!("unknown slope family index {other}"))),
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            DvIndex::K1 => 1,
            DvIndex::K2 => 2,
            DvIndex::K3 => 3,
            DvIndex::K5 => 5,
            DvIndex::K6 => 6,
            DvIndex::K7 => 7,
        }
    }
}

/// A separable slope field u(x, t) = U(sigma (x + a), sigma^2 (t + b)) whose
/// induced flow solves u_t = (u_x / (1 + u^2))_x.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DVSlopeFamily {
    pub index: DvIndex,
    pub sigma: f64,
    /// Spatial shift a in U(sigma (x + a), ...).
    pub shift_x: f64,
    /// Temporal shift b in U(..., sigma^2 (t + b)).
    pub shift_t: f64,
}

impl DVSlopeFamily {
    pub fn new(index: DvIndex, sigma: f64, shift_x: f64, shift_t: f64) -> Result<Self> {
        if sigma == 0.0 || !sigma.is_finite() {
            return Err(Error::invalid("sigma must be finite and nonzero"));
        }
        Ok(DVSlopeFamily {
            index,
            sigma,
            shift_x,
            shift_t,
        })
    }

    fn scaled(&self, x: f64, t: f64) -> (f64, f64) {
        (
            self.sigma * (x + self.shift_x),
            self.sigma * self.sigma * (t + self.shift_t),
        )
    }

    /// Evaluate the slope field; out-of-domain errors name the violated
    /// inequality in the scaled variables.
    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        let (xx, tt) = self.scaled(x, t);
        match self.index {
            DvIndex::K1 => {
                if xx.cos() == 0.0 {
                    return Err(Error::domain("cos(sigma*(x+a)) != 0", xx));
                }
                Ok(xx.tan())
            }
            DvIndex::K2 => {
                let q = -xx * xx - 2.0 * tt;
                if !(q > 0.0) {
                    return Err(Error::domain("-x^2 - 2t > 0 (scaled)", q));
                }
                Ok(xx / q.sqrt())
            }
            DvIndex::K3 => {
                let q = (2.0 * (xx - tt)).exp() - 1.0;
                if !(q > 0.0) {
                    return Err(Error::domain("exp(2(x - t)) > 1 (scaled)", q));
                }
                Ok(1.0 / q.sqrt())
            }
            DvIndex::K5 => {
                let q = (-2.0 * tt).exp() - xx.sinh().powi(2);
                if !(q > 0.0) {
                    return Err(Error::domain("sinh^2 x < exp(-2t) (scaled)", q));
                }
                Ok(xx.cosh() / q.sqrt())
            }
            DvIndex::K6 => {
                let q = xx.cos().powi(2) - (2.0 * tt).exp();
                if !(q > 0.0) {
                    return Err(Error::domain("cos^2 x > exp(2t) (scaled)", q));
                }
                Ok(xx.sin() / q.sqrt())
            }
            DvIndex::K7 => {
                let q = xx.cos().powi(2) + (2.0 * tt).exp();
                Ok(xx.sin() / q.sqrt())
            }
        }
    }

    /// Closed-form text of U.
    pub fn formula(&self) -> &'static str {
        match self.index {
            DvIndex::K1 => "U = tan(x)",
            DvIndex::K2 => "U = x / sqrt(-x^2 - 2t)",
            DvIndex::K3 => "U = 1 / sqrt(exp(2(x-t)) - 1)",
            DvIndex::K5 => "U = cosh(x) / sqrt(exp(-2t) - sinh^2 x)",
            DvIndex::K6 => "U = sin(x) / sqrt(cos^2 x - exp(2t))",
            DvIndex::K7 => "U = sin(x) / sqrt(cos^2 x + exp(2t))",
        }
    }

    pub fn domain_description(&self) -> &'static str {
        match self.index {
            DvIndex::K1 => "cos(x) != 0 (scaled variables)",
            DvIndex::K2 => "x^2 + 2t < 0 (scaled variables)",
            DvIndex::K3 => "x > t (scaled variables)",
            DvIndex::K5 => "sinh^2 x < exp(-2t) (scaled variables)",
            DvIndex::K6 => "cos^2 x > exp(2t) (scaled variables)",
            DvIndex::K7 => "all (x, t)",
        }
    }

    /// An x-interval strictly inside the validity domain at time t,
    /// trimmed 0.5% inside the boundaries.
    pub fn natural_x_span(&self, t: f64) -> Result<(f64, f64)> {
        let tt = self.sigma * self.sigma * (t + self.shift_t);
        // half-width in the scaled spatial variable
        let half = match self.index {
            DvIndex::K1 => FRAC_PI_2,
            DvIndex::K2 => {
                if tt >= 0.0 {
                    return Err(Error::domain("t + b < 0 for family 2", tt));
                }
                (-2.0 * tt).sqrt()
            }
            DvIndex::K3 => {
                // x in (t, t + span): return asymmetric interval directly
                let lo = tt + 0.005;
                let hi = tt + 3.0;
                let inv = 1.0 / self.sigma;
                return Ok((lo * inv - self.shift_x, hi * inv - self.shift_x));
            }
            DvIndex::K5 => (-tt).exp().asinh(),
            DvIndex::K6 => {
                let e = (2.0 * tt).exp();
                if !(e < 1.0) {
                    return Err(Error::domain("exp(2t) < 1 for family 6", e));
                }
                e.sqrt().acos()
            }
            DvIndex::K7 => 2.0 * FRAC_PI_2,
        };
        let inv = 1.0 / self.sigma;
        let (a, b) = (
            -0.995 * half * inv - self.shift_x,
            0.995 * half * inv - self.shift_x,
        );
        Ok((a.min(b), a.max(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

    #[test]
    fn grim_reaper_values() {
        assert_eq!(grim_reaper(1.0, 0.0, 0.0).unwrap(), 0.0);
        // cos(pi/3) = 1/2 exactly, so y = ln 2
        assert_abs_diff_eq!(
            grim_reaper(1.0, FRAC_PI_3, 0.0).unwrap(),
            std::f64::consts::LN_2,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(grim_reaper_asymptote_spacing(1.0), PI, epsilon = 1e-15);
        assert!(grim_reaper(1.0, 1.6, 0.0).is_err());
        assert_abs_diff_eq!(
            grim_reaper_slope(1.0, FRAC_PI_4, 0.0).unwrap(),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn shrinking_circle_radius_and_extinction() {
        assert_abs_diff_eq!(shrinking_circle(0.5, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert!(shrinking_circle(0.5, 0.5).is_err());
        assert!(shrinking_circle(0.5, 0.7).is_err());
        // radius * curvature = 1 at all times
        for t in [-2.0, -0.5, 0.4999] {
            let r = shrinking_circle(0.5, t).unwrap();
            assert_abs_diff_eq!(r * (1.0 / r), 1.0, epsilon = 1e-15);
        }
        // extinction limit
        assert!(shrinking_circle(0.5, 0.5 - 1e-13).unwrap() < 1e-6);
    }

    #[test]
    fn dv_slope_point_values() {
        let f = DVSlopeFamily::new(DvIndex::K1, 1.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(f.eval(FRAC_PI_4, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        let f = DVSlopeFamily::new(DvIndex::K2, 1.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(f.eval(1.0, -1.0).unwrap(), 1.0, epsilon = 1e-15);
        let f = DVSlopeFamily::new(DvIndex::K6, 1.0, 0.0, 0.0).unwrap();
        for t in [-3.0, -1.0, -0.2] {
            assert_eq!(f.eval(0.0, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn dv_slope_domain_errors_name_the_inequality() {
        let f = DVSlopeFamily::new(DvIndex::K2, 1.0, 0.0, 0.0).unwrap();
        match f.eval(1.0, 0.0) {
            Err(Error::Domain { constraint, .. }) => {
                assert!(constraint.contains("-x^2 - 2t > 0"));
            }
            other => panic!("expected domain error, got {other:?}"),
        }
        let f = DVSlopeFamily::new(DvIndex::K6, 1.0, 0.0, 0.0).unwrap();
        assert!(f.eval(1.5, -0.01).is_err());
        assert!(DVSlopeFamily::new(DvIndex::K1, 0.0, 0.0, 0.0).is_err());
        assert!(DvIndex::from_u8(4).is_err());
    }

    #[test]
    fn elliptic_homothetic_axes() {
        // beta = 1 reduces to the circle
        let c = elliptic_homothetic(1.0, 0.5, 0.0, 64).unwrap();
        for &(x, y) in &c.vertices {
            assert_abs_diff_eq!(x.hypot(y), 1.0, epsilon = 1e-12);
        }
        // beta = 2, t0 - t = 0.5: semi-axes (1, 0.5); ratio 1/beta at all t
        let c = elliptic_homothetic(2.0, 0.5, 0.0, 256).unwrap();
        let xmax = c.vertices.iter().map(|v| v.0).fold(f64::MIN, f64::max);
        let ymax = c.vertices.iter().map(|v| v.1).fold(f64::MIN, f64::max);
        assert_abs_diff_eq!(xmax, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(ymax, 0.5, epsilon = 1e-4);
        assert!(elliptic_homothetic(2.0, 0.5, 0.6, 64).is_err());
    }
}
