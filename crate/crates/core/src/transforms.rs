//! Equivalence transformations of diffusivities and solutions: the
//! reciprocal transformation, rotations, diagonal rescalings and
//! reflections.
//!
//! Transformed diffusivities are evaluable functional objects carrying their
//! generating chain; a recognizer canonicalises the cases that land back on
//! a catalog kind (e.g. a rotated isotropic model is again isotropic).

use crate::catalog::{eval_diffusivity, DiffusivityModel};
use crate::error::{Error, Result};
use crate::geometry::{GraphPatch, PlaneCurve};
use crate::specfun::cumulative_integral;

use serde::{Deserialize, Serialize};

/// Reflection axis: `X` flips y, `Y` flips x. Both send slope s to -s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

/// An element of the equivalence group acting on curves.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum EquivalenceTransform {
    /// Counterclockwise rotation by alpha.
    Rotation(f64),
    /// x -> a1 x, y -> a2 y with a1, a2 > 0.
    DiagonalScale(f64, f64),
    Reflection(Axis),
}

impl EquivalenceTransform {
    pub fn validate(&self) -> Result<()> {
        if let EquivalenceTransform::DiagonalScale(a1, a2) = *self {
            if !(a1 > 0.0 && a2 > 0.0) {
                return Err(Error::invalid("diagonal scale factors must be positive"));
            }
        }
        Ok(())
    }

    pub fn apply_point(&self, p: (f64, f64)) -> (f64, f64) {
        match *self {
            EquivalenceTransform::Rotation(alpha) => {
                let (s, c) = alpha.sin_cos();
                (p.0 * c - p.1 * s, p.0 * s + p.1 * c)
            }
            EquivalenceTransform::DiagonalScale(a1, a2) => (a1 * p.0, a2 * p.1),
            EquivalenceTransform::Reflection(Axis::X) => (p.0, -p.1),
            EquivalenceTransform::Reflection(Axis::Y) => (-p.0, p.1),
        }
    }
}

/// One step of a diffusivity transform chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DiffusivityStep {
    /// D'(s) = s^-2 D(1/s).
    Reciprocal,
    /// D'(s) = D((s cos a - sin a)/(s sin a + cos a)) / (s sin a + cos a)^2.
    Rotate(f64),
    /// D'(s) = a1^2 D(a1 s / a2).
    Rescale(f64, f64),
    /// D'(s) = D(-s).
    Reflect,
}

/// A diffusivity derived from a catalog model by a chain of equivalence
/// steps, evaluable pointwise.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivedDiffusivity {
    pub base: DiffusivityModel,
    pub chain: Vec<DiffusivityStep>,
}

impl DerivedDiffusivity {
    pub fn new(base: DiffusivityModel) -> Self {
        DerivedDiffusivity {
            base,
            chain: Vec::new(),
        }
    }

    pub fn reciprocal(mut self) -> Self {
        self.chain.push(DiffusivityStep::Reciprocal);
        self
    }

    pub fn rotate(mut self, alpha: f64) -> Self {
        self.chain.push(DiffusivityStep::Rotate(alpha));
        self
    }

    pub fn rescale(mut self, a1: f64, a2: f64) -> Result<Self> {
        if !(a1 > 0.0 && a2 > 0.0) {
            return Err(Error::invalid("rescale factors must be positive"));
        }
        self.chain.push(DiffusivityStep::Rescale(a1, a2));
        Ok(self)
    }

    pub fn reflect(mut self) -> Self {
        self.chain.push(DiffusivityStep::Reflect);
        self
    }

    /// Evaluate D(s) through the chain.
    pub fn eval(&self, s: f64) -> Result<f64> {
        eval_chain(&self.base, &self.chain, s)
    }

    /// Fold the chain back onto a catalog kind where the group action is
    /// structurally closed; None when the result is genuinely functional.
    pub fn recognize(&self) -> Option<DiffusivityModel> {
        let mut model = self.base;
        for step in &self.chain {
            model = recognize_step(model, *step)?;
        }
        Some(model)
    }

    /// JSON description including the generating chain.
    pub fn describe(&self) -> serde_json::Value {
        serde_json::json!({
            "base": self.base,
            "base_formula": self.base.description(),
            "chain": self.chain,
            "recognized": self.recognize(),
        })
    }
}

fn eval_chain(base: &DiffusivityModel, chain: &[DiffusivityStep], s: f64) -> Result<f64> {
    match chain.split_last() {
        None => eval_diffusivity(base, s).map(|(d, _)| d),
        Some((step, rest)) => match *step {
            DiffusivityStep::Reciprocal => {
                if s == 0.0 {
                    return Err(Error::domain("s != 0 under the reciprocal transform", s));
                }
                Ok(eval_chain(base, rest, 1.0 / s)? / (s * s))
            }
            DiffusivityStep::Rotate(alpha) => {
                let (sa, ca) = alpha.sin_cos();
                let denom = s * sa + ca;
                // pole when the two terms cancel to rounding level
                let scale = (s * sa).abs() + ca.abs();
                if denom.abs() <= 4.0 * f64::EPSILON * scale {
                    return Err(Error::domain("s sin(a) + cos(a) != 0 (rotation pole)", s));
                }
                Ok(eval_chain(base, rest, (s * ca - sa) / denom)? / (denom * denom))
            }
            DiffusivityStep::Rescale(a1, a2) => {
                Ok(a1 * a1 * eval_chain(base, rest, a1 * s / a2)?)
            }
            DiffusivityStep::Reflect => eval_chain(base, rest, -s),
        },
    }
}

fn recognize_step(model: DiffusivityModel, step: DiffusivityStep) -> Option<DiffusivityModel> {
    use DiffusivityModel as M;
    use DiffusivityStep as S;
    // canonicalise PowerLaw with n = 0 to Constant
    let canon = |m: M| match m {
        M::PowerLaw { d0, n } if n == 0.0 => M::Constant { d: d0 },
        other => other,
    };
    let out = match (model, step) {
        // all catalog kinds are even in the slope
        (m, S::Reflect) => m,
        (m, S::Rotate(a)) if a == 0.0 => m,
        (m, S::Rescale(a1, a2)) if a1 == 1.0 && a2 == 1.0 => m,
        (M::Isotropic, S::Reciprocal) => M::Isotropic,
        (M::Isotropic, S::Rotate(_)) => M::Isotropic,
        (M::Isotropic, S::Rescale(a1, a2)) if a1 == 1.0 => M::BetaScaled { beta: 1.0 / a2 },
        (M::BetaScaled { beta }, S::Rescale(a1, a2)) if a1 == 1.0 => {
            M::BetaScaled { beta: beta / a2 }
        }
        (M::Constant { d }, S::Reciprocal) => M::PowerLaw { d0: d, n: -2.0 },
        (M::Constant { d }, S::Rescale(a1, _)) => M::Constant { d: d * a1 * a1 },
        (M::PowerLaw { d0, n }, S::Reciprocal) => M::PowerLaw { d0, n: -n - 2.0 },
        (M::PowerLaw { d0, n }, S::Rescale(a1, a2)) => M::PowerLaw {
            d0: d0 * a1.powf(2.0 + n) * a2.powf(-n),
            n,
        },
        _ => return None,
    };
    Some(canon(out))
}

/// Reciprocal transform of a diffusivity: D'(s) = s^-2 D(1/s).
pub fn reciprocal_diffusivity(model: DiffusivityModel) -> DerivedDiffusivity {
    DerivedDiffusivity::new(model).reciprocal()
}

/// Rotation of a diffusivity by angle alpha.
pub fn rotate_diffusivity(model: DiffusivityModel, alpha: f64) -> DerivedDiffusivity {
    DerivedDiffusivity::new(model).rotate(alpha)
}

/// Diagonal rescaling of a diffusivity: D'(s) = a1^2 D(a1 s / a2).
pub fn rescale_diffusivity(
    model: DiffusivityModel,
    a1: f64,
    a2: f64,
) -> Result<DerivedDiffusivity> {
    DerivedDiffusivity::new(model).rescale(a1, a2)
}

/// Slope transformation under rotation by alpha:
/// s -> (s cos a + sin a) / (cos a - s sin a).
pub fn rotate_slope(u: f64, alpha: f64) -> Result<f64> {
    let (sa, ca) = alpha.sin_cos();
    let denom = ca - u * sa;
    if denom == 0.0 {
        return Err(Error::domain("cos(a) - u sin(a) != 0 (vertical image)", u));
    }
    Ok((u * ca + sa) / denom)
}

/// Apply an equivalence transform to a closed or open polyline.
pub fn transform_curve(curve: &PlaneCurve, t: &EquivalenceTransform) -> Result<PlaneCurve> {
    t.validate()?;
    let vertices = curve.vertices.iter().map(|&p| t.apply_point(p)).collect();
    PlaneCurve::new_unchecked_simple(vertices, curve.closed, curve.time_stamp)
}

/// Result of transforming a graph: still a graph when the image remains
/// single-valued over x, otherwise a general curve.
#[derive(Debug, Clone)]
pub enum TransformedCurve {
    Graph(GraphPatch),
    Curve(PlaneCurve),
}

/// Apply an equivalence transform to a graph patch, reporting whether the
/// image is still a graph over x.
pub fn transform_graph(patch: &GraphPatch, t: &EquivalenceTransform) -> Result<TransformedCurve> {
    t.validate()?;
    let mut pts: Vec<(f64, f64)> = patch
        .xs
        .iter()
        .zip(&patch.ys)
        .map(|(&x, &y)| t.apply_point((x, y)))
        .collect();
    let increasing = pts.windows(2).all(|w| w[1].0 > w[0].0);
    let decreasing = pts.windows(2).all(|w| w[1].0 < w[0].0);
    if decreasing {
        pts.reverse();
    }
    if increasing || decreasing {
        let (xs, ys) = pts.into_iter().unzip();
        Ok(TransformedCurve::Graph(GraphPatch::new(
            xs,
            ys,
            patch.time_stamp,
        )?))
    } else {
        Ok(TransformedCurve::Curve(PlaneCurve::new_unchecked_simple(
            pts,
            false,
            patch.time_stamp,
        )?))
    }
}

/// Image of a slope field under the reciprocal transformation at one time:
/// x' = integral of u dx (minus the flux-history gauge), u' = 1/u.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReciprocalImage {
    pub x_primed: Vec<f64>,
    pub u_primed: Vec<f64>,
    /// The additive constant subtracted from x' (the y(0, a) gauge; the map
    /// is only defined up to this constant).
    pub gauge: f64,
    pub time_stamp: f64,
}

/// Reciprocal transform of a sampled slope patch (`ys` holds u values).
/// Requires u of one strict sign so the underlying curve is a monotone
/// graph and the map is single-valued.
pub fn reciprocal_map(slopes: &GraphPatch, gauge: Option<f64>) -> Result<ReciprocalImage> {
    let u = &slopes.ys;
    if u.iter().any(|&v| v == 0.0)
        || u.windows(2).any(|w| w[0].signum() != w[1].signum())
    {
        return Err(Error::domain(
            "u != 0 on the patch (monotone curve required)",
            0.0,
        ));
    }
    let gauge = gauge.unwrap_or(0.0);
    let cum = cumulative_integral(&slopes.xs, u)?;
    let x_primed = cum.iter().map(|&c| c - gauge).collect();
    let u_primed = u.iter().map(|&v| 1.0 / v).collect();
    Ok(ReciprocalImage {
        x_primed,
        u_primed,
        gauge,
        time_stamp: slopes.time_stamp,
    })
}

/// Integrate the reciprocal image back to a graph y'(x'). The image grid is
/// monotone because u' keeps one sign.
pub fn reconstruct_graph(image: &ReciprocalImage) -> Result<GraphPatch> {
    let mut xs = image.x_primed.clone();
    let mut us = image.u_primed.clone();
    if xs.windows(2).all(|w| w[1] < w[0]) {
        xs.reverse();
        us.reverse();
    }
    let ys = cumulative_integral(&xs, &us)?;
    GraphPatch::new(xs, ys, image.time_stamp)
}
