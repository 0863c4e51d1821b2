//! Similarity and travelling-wave reductions: the grain-boundary groove
//! boundary-value problem, the homothetic closed-curve profile with its
//! existence classifier, and steady travelling waves through K(u).

pub mod groove;
pub mod homothetic;
pub mod ode;
pub mod wave;

pub use groove::{groove_depth, groove_depth_coefficient, solve_groove, GrooveProblem};
pub use homothetic::{
    classify_homothetic, classify_homothetic_from_fit, solve_homothetic_profile, HomotheticCase,
    HomotheticCaseInfo, HomotheticProfile, HomotheticVerdict,
};
pub use wave::{steady_wave, SteadyWave};

use crate::catalog::DiffusivityModel;
use crate::error::{Error, Result};
use crate::specfun::Tolerance;

use serde::{Deserialize, Serialize};

/// Tabulated similarity profile F(rho) with boundary data and shooting
/// metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimilarityProfile {
    pub rho: Vec<f64>,
    pub f: Vec<f64>,
    pub model: DiffusivityModel,
    /// F(0).
    pub boundary_value: f64,
    /// The shooting parameter F'(0).
    pub shoot_param: f64,
    pub tol: Tolerance,
}

impl SimilarityProfile {
    /// Piecewise-cubic interpolation of the tabulated profile.
    pub fn value_at(&self, rho: f64) -> Result<f64> {
        let xs = &self.rho;
        let n = xs.len();
        if rho < xs[0] || rho > xs[n - 1] {
            return Err(Error::domain(
                "rho inside the tabulated profile range",
                rho,
            ));
        }
        let j = match xs.binary_search_by(|v| v.total_cmp(&rho)) {
            Ok(j) => return Ok(self.f[j]),
            Err(j) => j - 1,
        };
        let start = j.saturating_sub(1).min(n - 4);
        let (x4, y4) = (&xs[start..start + 4], &self.f[start..start + 4]);
        // cubic Lagrange through the 4-point stencil
        let mut acc = 0.0;
        for a in 0..4 {
            let mut w = y4[a];
            for b in 0..4 {
                if a != b {
                    w *= (rho - x4[b]) / (x4[a] - x4[b]);
                }
            }
            acc += w;
        }
        Ok(acc)
    }
}
