//! Closed-form solution families, evaluable pointwise with explicit validity
//! domains, plus residual self-verification against the governing PDE.
//!
//! Canonical frames: the shrinking oval goes extinct at t = 0 and the circle
//! is centred at the origin; translations and rescalings are applied through
//! the `transforms` module rather than duplicated as family parameters.

mod aniso;
mod families;
mod oval;
mod periodic;
pub mod verify;

pub use aniso::{AnisoMarkers, AnisoSeparable};
pub use families::{
    elliptic_homothetic, elliptic_homothetic_branch_y, grim_reaper, grim_reaper_asymptote_spacing,
    grim_reaper_slope, shrinking_circle, shrinking_circle_branch_y, DVSlopeFamily, DvIndex,
};
pub use oval::{angenent_oval_branch, angenent_oval_diagnostics, AngenentOval, OvalDiagnostics};
pub use periodic::{periodic_decay_amplitude, periodic_decay_y, AmplitudeReport, PeriodicDecay};

use crate::error::{Error, Result};
use crate::specfun::{invert_monotone, quad_adaptive, Tolerance};

use serde::{Deserialize, Serialize};

/// Slope-dependent diffusivity D(u) in `y_t = D(y_x) y_xx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DiffusivityModel {
    /// D(u) = 1 / (1 + u^2), the curve shortening flow.
    Isotropic,
    /// D(u) = 1 / (1 + (beta u)^2): the isotropic model rescaled along one
    /// axis; anisotropy factor B between 1 and 1/beta^2.
    BetaScaled { beta: f64 },
    /// D(u) = d0 cos(z) with a u = integral_0^z (cos s)^(-3/2) ds.
    /// Nearly isotropic for a = sqrt(2): B(u) = 1 + O(u^4), B -> 2 at large
    /// slope.
    DVCos { a: f64, d0: f64 },
    /// Constant D (the linear heat equation).
    Constant { d: f64 },
    /// D(u) = d0 |u|^n, defined away from u = 0 for negative n.
    PowerLaw { d0: f64, n: f64 },
}

/// Large-slope power-law behaviour D(u) ~ d0 u^n as u -> infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerAsymptote {
    pub d0: f64,
    pub n: f64,
}

impl DiffusivityModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DiffusivityModel::Isotropic => Ok(()),
            DiffusivityModel::BetaScaled { beta } => {
                if beta == 0.0 || !beta.is_finite() {
                    Err(Error::invalid("beta must be finite and nonzero"))
                } else {
                    Ok(())
                }
            }
            DiffusivityModel::DVCos { a, d0 } => {
                if !(a > 0.0 && d0 > 0.0) {
                    Err(Error::invalid("DVCos requires a > 0 and d0 > 0"))
                } else {
                    Ok(())
                }
            }
            DiffusivityModel::Constant { d } => {
                if !(d > 0.0) {
                    Err(Error::invalid("constant diffusivity must be positive"))
                } else {
                    Ok(())
                }
            }
            DiffusivityModel::PowerLaw { d0, .. } => {
                if !(d0 > 0.0) {
                    Err(Error::invalid("power-law coefficient must be positive"))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Human-readable formula.
    pub fn description(&self) -> String {
        match *self {
            DiffusivityModel::Isotropic => "D(u) = 1/(1+u^2)".into(),
            DiffusivityModel::BetaScaled { beta } => format!("D(u) = 1/(1+({beta}*u)^2)"),
            DiffusivityModel::DVCos { a, d0 } => {
                format!("D(u) = {d0}*cos(z), {a}*u = int_0^z (cos s)^(-3/2) ds")
            }
            DiffusivityModel::Constant { d } => format!("D(u) = {d}"),
            DiffusivityModel::PowerLaw { d0, n } => format!("D(u) = {d0}*|u|^{n}"),
        }
    }

    /// Large-slope exponent metadata, exact for every built-in kind.
    pub fn large_slope_asymptote(&self) -> PowerAsymptote {
        match *self {
            DiffusivityModel::Isotropic => PowerAsymptote { d0: 1.0, n: -2.0 },
            DiffusivityModel::BetaScaled { beta } => PowerAsymptote {
                d0: beta.powi(-2),
                n: -2.0,
            },
            DiffusivityModel::DVCos { a, d0 } => PowerAsymptote {
                d0: 4.0 * d0 / (a * a),
                n: -2.0,
            },
            DiffusivityModel::Constant { d } => PowerAsymptote { d0: d, n: 0.0 },
            DiffusivityModel::PowerLaw { d0, n } => PowerAsymptote { d0, n },
        }
    }

    /// D(u) alone; see [`eval_diffusivity`] for the (D, B) pair.
    pub fn d(&self, u: f64) -> Result<f64> {
        eval_diffusivity(self, u).map(|(d, _)| d)
    }
}

/// Evaluate (D(u), B(u)) with B = (1 + u^2) D(u), the slope-dependent
/// anisotropy factor.
pub fn eval_diffusivity(model: &DiffusivityModel, u: f64) -> Result<(f64, f64)> {
    if !u.is_finite() {
        return Err(Error::domain("u finite", u));
    }
    let d = match *model {
        DiffusivityModel::Isotropic => 1.0 / (1.0 + u * u),
        DiffusivityModel::BetaScaled { beta } => 1.0 / (1.0 + (beta * u).powi(2)),
        DiffusivityModel::DVCos { a, d0 } => d0 * dvcos_angle(a * u)?.cos(),
        DiffusivityModel::Constant { d } => d,
        DiffusivityModel::PowerLaw { d0, n } => {
            if u == 0.0 && n < 0.0 {
                return Err(Error::domain("power-law diffusivity needs u != 0", u));
            }
            d0 * u.abs().powf(n)
        }
    };
    Ok((d, (1.0 + u * u) * d))
}

/// integral_0^{pi/2} (cos s)^(1/2) ds, entering the large-slope asymptotics
/// of the DVCos angle integral.
const SQRT_COS_FULL: f64 = 1.198_140_234_735_592_2;

/// The DVCos angle integral g(z) = integral_0^z (cos s)^(-3/2) ds for
/// |z| < pi/2, through the identity
/// g(z) = 2 sin z / sqrt(cos z) - integral_0^z (cos s)^(1/2) ds,
/// which trades the steep integrand for a bounded one.
pub fn dvcos_angle_integral(z: f64) -> Result<f64> {
    if !(z.abs() < std::f64::consts::FRAC_PI_2) {
        return Err(Error::domain("|z| < pi/2", z));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let tol = Tolerance::default().with_abs(1e-14);
    let smooth = quad_adaptive(|s: f64| s.cos().sqrt(), 0.0, z, &tol)?;
    Ok(2.0 * z.sin() / z.cos().sqrt() - smooth)
}

/// Invert the angle integral: the z in (-pi/2, pi/2) with g(z) = au.
pub fn dvcos_angle(au: f64) -> Result<f64> {
    if au == 0.0 {
        return Ok(0.0);
    }
    if au < 0.0 {
        return dvcos_angle(-au).map(|z| -z);
    }
    // bracket from the asymptotic g(pi/2 - d) ~ 2/sqrt(d) - SQRT_COS_FULL
    let d_guess = (2.0 / (au + SQRT_COS_FULL)).powi(2);
    let d = (d_guess / 16.0).clamp(1e-12, 0.17);
    let hi = std::f64::consts::FRAC_PI_2 - d;
    let tol = Tolerance::default().with_abs(1e-13);
    match invert_monotone(dvcos_angle_integral, au, (0.0, hi), &tol) {
        Err(Error::Bracket { .. }) => Err(Error::domain(
            "slope representable by the DVCos model (|a*u| below ~1e6)",
            au,
        )),
        other => other,
    }
}

/// The PDE a solution family satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PdeForm {
    /// y_t = D(y_x) y_xx
    Graph,
    /// u_t = (D(u) u_x)_x
    Slope,
}

/// Catalog families behind one face, for sampling, descriptors and the
/// residual suite.
#[derive(Debug, Clone)]
pub enum Family {
    GrimReaper { c: f64 },
    /// Upper branch of the shrinking circle, as a graph.
    ShrinkingCircle { t0: f64 },
    AngenentOval,
    Periodic(PeriodicDecay),
    DvSlope(DVSlopeFamily),
    EllipticHomothetic { beta: f64, t0: f64 },
    AnisoSeparable(AnisoSeparable),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::GrimReaper { .. } => "grim-reaper",
            Family::ShrinkingCircle { .. } => "shrinking-circle",
            Family::AngenentOval => "angenent-oval",
            Family::Periodic(_) => "periodic-decay",
            Family::DvSlope(_) => "dv-slope",
            Family::EllipticHomothetic { .. } => "elliptic-homothetic",
            Family::AnisoSeparable(_) => "aniso-separable",
        }
    }

    /// Diffusivity model whose PDE this family satisfies.
    pub fn diffusivity(&self) -> DiffusivityModel {
        match self {
            Family::GrimReaper { .. }
            | Family::ShrinkingCircle { .. }
            | Family::AngenentOval
            | Family::Periodic(_)
            | Family::DvSlope(_) => DiffusivityModel::Isotropic,
            Family::EllipticHomothetic { beta, .. } => DiffusivityModel::BetaScaled { beta: *beta },
            Family::AnisoSeparable(s) => DiffusivityModel::DVCos { a: s.a, d0: s.d0 },
        }
    }

    /// Preferred PDE form for residual checks.
    pub fn pde(&self) -> PdeForm {
        match self {
            Family::DvSlope(_) | Family::AnisoSeparable(_) => PdeForm::Slope,
            _ => PdeForm::Graph,
        }
    }

    pub fn has_graph(&self) -> bool {
        !matches!(self, Family::DvSlope(_))
    }

    pub fn has_slope(&self) -> bool {
        !matches!(self, Family::Periodic(_) | Family::EllipticHomothetic { .. })
    }

    /// y(x, t) where the family has a graph representation.
    pub fn graph_value(&self, x: f64, t: f64) -> Result<f64> {
        match self {
            Family::GrimReaper { c } => grim_reaper(*c, x, t),
            Family::ShrinkingCircle { t0 } => shrinking_circle_branch_y(*t0, x, t),
            Family::AngenentOval => angenent_oval_branch(t, x),
            Family::Periodic(p) => Ok(periodic_decay_y(p, x, t)),
            Family::EllipticHomothetic { beta, t0 } => {
                elliptic_homothetic_branch_y(*beta, *t0, x, t)
            }
            Family::AnisoSeparable(s) => s.curve_y(x, t, t),
            Family::DvSlope(_) => Err(Error::invalid(
                "dv-slope families define a slope field; integrate to obtain a curve",
            )),
        }
    }

    /// u(x, t) = y_x where a closed-form slope is available.
    pub fn slope_value(&self, x: f64, t: f64) -> Result<f64> {
        match self {
            Family::GrimReaper { c } => grim_reaper_slope(*c, x, t),
            Family::ShrinkingCircle { t0 } => {
                let r2 = 2.0 * (t0 - t);
                let y = shrinking_circle_branch_y(*t0, x, t)?;
                if y <= 0.0 || r2 <= 0.0 {
                    return Err(Error::domain("|x| < r(t)", x));
                }
                Ok(-x / y)
            }
            Family::AngenentOval => AngenentOval::new(t)?.slope(x),
            Family::DvSlope(f) => f.eval(x, t),
            Family::AnisoSeparable(s) => s.slope(x, t),
            Family::Periodic(_) | Family::EllipticHomothetic { .. } => Err(Error::invalid(
                "no closed-form slope exposed for this family; differentiate the graph",
            )),
        }
    }

    /// Natural x-window (open interval, trimmed 0.5% inside the domain
    /// boundaries) for sampling at time t.
    pub fn natural_x_span(&self, t: f64) -> Result<(f64, f64)> {
        match self {
            Family::GrimReaper { c } => {
                let half = std::f64::consts::FRAC_PI_2 / c.abs() * 0.995;
                Ok((-half, half))
            }
            Family::ShrinkingCircle { t0 } => {
                let r = shrinking_circle(*t0, t)?;
                Ok((-0.995 * r, 0.995 * r))
            }
            Family::AngenentOval => {
                let oval = AngenentOval::new(t)?;
                let xm = oval.x_max();
                Ok((-0.995 * xm, 0.995 * xm))
            }
            Family::Periodic(p) => Ok((0.0, p.ell)),
            Family::DvSlope(f) => f.natural_x_span(t),
            Family::EllipticHomothetic { beta: _, t0 } => {
                let r = shrinking_circle(*t0, t)?;
                Ok((-0.995 * r, 0.995 * r))
            }
            Family::AnisoSeparable(s) => {
                let (lo, _) = s.branch_x_span()?;
                let hi = s.markers(t)?.x_u;
                Ok((lo * 0.995 + 0.005 * hi, hi - 0.005 * (hi - lo)))
            }
        }
    }

    /// JSON descriptor: kind, parameters, validity domain.
    pub fn descriptor(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            Family::GrimReaper { c } => json!({
                "family": "grim-reaper",
                "parameters": {"c": c},
                "graph": "y = c*t - ln(cos(c*x))/c",
                "domain": "|c*x| < pi/2, all t",
                "diffusivity": self.diffusivity().description(),
            }),
            Family::ShrinkingCircle { t0 } => json!({
                "family": "shrinking-circle",
                "parameters": {"t0": t0},
                "curve": "x^2 + y^2 = 2*(t0 - t)",
                "domain": "t < t0",
                "diffusivity": self.diffusivity().description(),
            }),
            Family::AngenentOval => json!({
                "family": "angenent-oval",
                "parameters": {},
                "curve": "cosh(y) = exp(-t)*cos(x)",
                "domain": "t < 0, |x| < arccos(exp(t))",
                "diffusivity": self.diffusivity().description(),
            }),
            Family::Periodic(p) => json!({
                "family": "periodic-decay",
                "parameters": {"n": p.n, "ell": p.ell, "tau0": p.tau0, "negative": p.negative,
                                "k": p.k()},
                "graph": "Y = s/K * ln((sqrt(exp(2K^2(tau-tau0)) + sin^2(KX)) + sin(KX)) * exp(-K^2(tau-tau0)))",
                "domain": "all X, all tau; zeros at X = 0 and X = ell",
                "diffusivity": self.diffusivity().description(),
            }),
            Family::DvSlope(f) => json!({
                "family": "dv-slope",
                "parameters": {"k": f.index.as_u8(), "sigma": f.sigma, "a": f.shift_x, "b": f.shift_t},
                "slope": f.formula(),
                "domain": f.domain_description(),
                "diffusivity": self.diffusivity().description(),
            }),
            Family::EllipticHomothetic { beta, t0 } => json!({
                "family": "elliptic-homothetic",
                "parameters": {"beta": beta, "t0": t0},
                "curve": "x^2 + beta^2*y^2 = 2*(t0 - t)",
                "domain": "t < t0",
                "diffusivity": self.diffusivity().description(),
            }),
            Family::AnisoSeparable(s) => json!({
                "family": "aniso-separable",
                "parameters": {"r": s.r, "delta": s.delta, "a": s.a, "d0": s.d0},
                "slope": "u = (1/a) * g(v(x) + w(t)),  g(z) = int_0^z (cos s)^(-3/2) ds",
                "domain": "|v(x) + w(t)| < pi/2 (vertical asymptote at x_u(t))",
                "diffusivity": self.diffusivity().description(),
            }),
        }
    }

    /// Descriptors for the canonical instance of every family.
    pub fn list_descriptors() -> Vec<serde_json::Value> {
        let canonical: Vec<Family> = vec![
            Family::GrimReaper { c: 1.0 },
            Family::ShrinkingCircle { t0: 0.0 },
            Family::AngenentOval,
            Family::Periodic(PeriodicDecay::new(5, 1.0, 0.0, true).expect("valid")),
            Family::DvSlope(DVSlopeFamily::new(DvIndex::K6, 1.0, 0.0, 0.0).expect("valid")),
            Family::EllipticHomothetic { beta: 2.0, t0: 0.0 },
            Family::AnisoSeparable(AnisoSeparable::new(1.0, 0.0, 1.0, 1.0).expect("valid")),
        ];
        canonical.iter().map(Family::descriptor).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn isotropic_and_beta_values() {
        let (d, b) = eval_diffusivity(&DiffusivityModel::Isotropic, 1.0).unwrap();
        assert_abs_diff_eq!(d, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(b, 1.0, epsilon = 1e-15);
        let (d, b) = eval_diffusivity(&DiffusivityModel::BetaScaled { beta: 2.0 }, 1.0).unwrap();
        assert_abs_diff_eq!(d, 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(b, 0.4, epsilon = 1e-15);
    }

    #[test]
    fn dvcos_at_zero_slope() {
        let m = DiffusivityModel::DVCos {
            a: std::f64::consts::SQRT_2,
            d0: 1.0,
        };
        let (d, b) = eval_diffusivity(&m, 0.0).unwrap();
        assert_eq!(d, 1.0);
        assert_eq!(b, 1.0);
    }

    #[test]
    fn dvcos_large_slope_anisotropy_limit() {
        // B -> 4 d0 / a^2 as u -> inf; for a = sqrt(2), d0 = 1 the limit is 2
        let m = DiffusivityModel::DVCos {
            a: std::f64::consts::SQRT_2,
            d0: 1.0,
        };
        let (_, b) = eval_diffusivity(&m, 1e3).unwrap();
        assert_abs_diff_eq!(b, 1.996_617_446_034, epsilon = 1e-8);
        assert!((b - 2.0).abs() < 0.01 * 2.0);
    }

    #[test]
    fn dvcos_angle_integral_matches_direct_quadrature() {
        let tol = Tolerance::default().with_abs(1e-12);
        for z in [0.2, 0.8, 1.3, 1.5] {
            let direct =
                crate::specfun::quad_singular(|s: f64| s.cos().powf(-1.5), 0.0, z, &tol).unwrap();
            let via_identity = dvcos_angle_integral(z).unwrap();
            assert_abs_diff_eq!(direct, via_identity, epsilon = 1e-10);
        }
    }

    #[test]
    fn dvcos_angle_inversion_round_trip() {
        for z in [-1.4, -0.3, 0.0, 0.5, 1.2, 1.55] {
            let au = dvcos_angle_integral(z).unwrap();
            let back = dvcos_angle(au).unwrap();
            assert_abs_diff_eq!(back, z, epsilon = 1e-11);
        }
    }

    #[test]
    fn power_law_at_zero_is_domain_error() {
        let m = DiffusivityModel::PowerLaw { d0: 1.0, n: -2.0 };
        assert!(eval_diffusivity(&m, 0.0).is_err());
        let (d, _) = eval_diffusivity(&m, 2.0).unwrap();
        assert_abs_diff_eq!(d, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn large_slope_metadata() {
        let a = DiffusivityModel::BetaScaled { beta: 2.0 }.large_slope_asymptote();
        assert_eq!(a.n, -2.0);
        assert_abs_diff_eq!(a.d0, 0.25, epsilon = 1e-15);
        let a = DiffusivityModel::DVCos {
            a: std::f64::consts::SQRT_2,
            d0: 1.0,
        }
        .large_slope_asymptote();
        assert_abs_diff_eq!(a.d0, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn descriptors_cover_all_families() {
        let ds = Family::list_descriptors();
        assert_eq!(ds.len(), 7);
        for d in &ds {
            assert!(d.get("family").is_some());
            assert!(d.get("domain").is_some());
        }
    }
}
