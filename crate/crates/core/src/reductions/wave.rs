//! Steady travelling waves of the anisotropic flow: the slope field of a
//! wave moving at speed c satisfies u_s(x) = K^(-1)(c x + c2) with
//! K(u) = integral_0^u D(s) ds. When K has a finite limit (inverse-square
//! diffusivity decay) the wave is confined between two vertical asymptotes.

use crate::catalog::{eval_diffusivity, DiffusivityModel};
use crate::error::{Error, Result};
use crate::specfun::{invert_monotone, quad_singular, Tolerance};

use serde::{Deserialize, Serialize};

/// Two-parameter steady travelling wave.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SteadyWave {
    pub model: DiffusivityModel,
    pub c: f64,
    pub c2: f64,
    /// Tabulated (u, K(u)) samples over the working range.
    pub k_table: Vec<(f64, f64)>,
    /// lim K(u) as u -> infinity when finite.
    pub k_infinity: Option<f64>,
    /// Vertical asymptotes (x at c x + c2 = -K_inf, +K_inf) when K_inf is
    /// finite.
    pub asymptotes: Option<(f64, f64)>,
    /// Largest |u| covered by the tabulation/inversion.
    pub u_max: f64,
}

/// Construct the steady wave for a model, tabulating K on [-u_max, u_max].
pub fn steady_wave(model: DiffusivityModel, c: f64, c2: f64, u_max: f64) -> Result<SteadyWave> {
    model.validate()?;
    if c == 0.0 {
        return Err(Error::invalid("wave speed c must be nonzero"));
    }
    if !(u_max > 1.0) {
        return Err(Error::invalid("u_max must exceed 1"));
    }
    if let DiffusivityModel::PowerLaw { n, .. } = model {
        if n <= -1.0 {
            return Err(Error::domain(
                "K(u) = int_0^u D requires an integrable origin (power law needs n > -1)",
                n,
            ));
        }
    }
    let wave = SteadyWave {
        model,
        c,
        c2,
        k_table: Vec::new(),
        k_infinity: None,
        asymptotes: None,
        u_max,
    };
    // tabulate on a tan-spread grid (dense near 0 where K curves); the
    // negative side mirrors by oddness of K, all model kinds being even
    let half = 128;
    let spread = (u_max).atan();
    let mut prev_u = 0.0;
    let mut prev_k = 0.0;
    let mut pos = Vec::with_capacity(half + 1);
    pos.push((0.0, 0.0));
    for i in 1..=half {
        let u = (spread * i as f64 / half as f64).tan();
        let k = prev_k + wave.k_increment(prev_u, u)?;
        pos.push((u, k));
        prev_u = u;
        prev_k = k;
    }
    let mut table = Vec::with_capacity(2 * half + 1);
    for &(u, k) in pos.iter().rev() {
        if u > 0.0 {
            table.push((-u, -k));
        }
    }
    table.extend(pos.iter().copied());
    let asym = model.large_slope_asymptote();
    let k_infinity = if asym.n < -1.0 {
        // K_inf = K(u_max) + integral_{u_max}^inf d0 u^n du
        let tail = asym.d0 * u_max.powf(asym.n + 1.0) / (-asym.n - 1.0);
        Some(prev_k + tail)
    } else {
        None
    };
    let asymptotes = k_infinity.map(|kinf| {
        let a = (-kinf - c2) / c;
        let b = (kinf - c2) / c;
        (a.min(b), a.max(b))
    });
    Ok(SteadyWave {
        k_table: table,
        k_infinity,
        asymptotes,
        ..wave
    })
}

impl SteadyWave {
    fn k_increment(&self, from: f64, to: f64) -> Result<f64> {
        let model = self.model;
        let tol = Tolerance::default().with_abs(1e-13);
        quad_singular(
            |s: f64| eval_diffusivity(&model, s).map(|(d, _)| d).unwrap_or(f64::NAN),
            from,
            to,
            &tol,
        )
    }

    /// K(u) = integral_0^u D(s) ds by direct quadrature (strictly
    /// increasing since D > 0).
    pub fn k_of(&self, u: f64) -> Result<f64> {
        self.k_increment(0.0, u)
    }

    /// Monotone inverse of K on the tabulated range.
    pub fn u_of_k(&self, k: f64) -> Result<f64> {
        let tol = Tolerance {
            abs_tol: 1e-13,
            rel_tol: 1e-13,
            max_iterations: 200,
        };
        invert_monotone(|u| self.k_of(u), k, (-self.u_max, self.u_max), &tol)
    }

    /// Wave slope u_s(x) = K^(-1)(c x + c2).
    pub fn slope_at(&self, x: f64) -> Result<f64> {
        self.u_of_k(self.c * x + self.c2)
    }

    /// Wave profile y(x, t) = c t + integral_0^x u_s; the additive constant
    /// is fixed by y(0, 0) = 0.
    pub fn y(&self, x: f64, t: f64) -> Result<f64> {
        let tol = Tolerance::default().with_abs(1e-11);
        let profile = quad_singular(
            |s: f64| self.slope_at(s).unwrap_or(f64::NAN),
            0.0,
            x,
            &tol,
        )?;
        Ok(self.c * t + profile)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn isotropic_wave_is_the_grim_reaper() {
        let w = steady_wave(DiffusivityModel::Isotropic, 1.0, 0.0, 1e4).unwrap();
        // K = arctan
        assert_abs_diff_eq!(w.k_of(1.0).unwrap(), FRAC_PI_4, epsilon = 1e-12);
        // u_s = tan(x)
        assert_abs_diff_eq!(w.slope_at(0.7).unwrap(), 0.7f64.tan(), epsilon = 1e-9);
        // y = t - ln cos x
        let y = w.y(0.5, 0.3).unwrap();
        assert_abs_diff_eq!(y, 0.3 - 0.5f64.cos().ln(), epsilon = 1e-8);
        // asymptote half-width pi/2
        let (lo, hi) = w.asymptotes.unwrap();
        assert_abs_diff_eq!(hi, FRAC_PI_2, epsilon = 1e-7);
        assert_abs_diff_eq!(lo, -FRAC_PI_2, epsilon = 1e-7);
    }

    #[test]
    fn constant_diffusivity_has_no_asymptote() {
        let w = steady_wave(DiffusivityModel::Constant { d: 2.0 }, 1.0, 0.0, 1e3).unwrap();
        assert!(w.k_infinity.is_none());
        assert!(w.asymptotes.is_none());
        // K(u) = D u
        assert_abs_diff_eq!(w.k_of(3.0).unwrap(), 6.0, epsilon = 1e-10);
        // parabolic-style profile exists everywhere sampled
        assert!(w.y(5.0, 0.0).is_ok());
    }

    #[test]
    fn beta_wave_asymptotes() {
        // K_inf = pi/(2 beta) = pi/4 for beta = 2
        let w = steady_wave(DiffusivityModel::BetaScaled { beta: 2.0 }, 1.0, 0.0, 1e4).unwrap();
        assert_abs_diff_eq!(w.k_infinity.unwrap(), FRAC_PI_4, epsilon = 1e-7);
        let (lo, hi) = w.asymptotes.unwrap();
        assert_abs_diff_eq!(hi, FRAC_PI_4, epsilon = 1e-7);
        assert_abs_diff_eq!(lo, -FRAC_PI_4, epsilon = 1e-7);
    }

    #[test]
    fn inverse_round_trip() {
        let w = steady_wave(DiffusivityModel::Isotropic, 2.0, 0.1, 1e3).unwrap();
        for u in [-8.0, -1.3, -0.2, 0.0, 0.5, 3.0, 9.5] {
            let k = w.k_of(u).unwrap();
            let back = w.u_of_k(k).unwrap();
            assert!(
                (back - u).abs() < 1e-10 * (1.0 + u.abs()),
                "round trip failed at u = {u}: {back}"
            );
        }
    }

    #[test]
    fn k_table_is_strictly_increasing() {
        let w = steady_wave(DiffusivityModel::BetaScaled { beta: 1.5 }, 1.0, 0.0, 100.0).unwrap();
        assert!(w.k_table.windows(2).all(|p| p[1].1 > p[0].1));
        assert!(w.k_table.windows(2).all(|p| p[1].0 > p[0].0));
    }

    #[test]
    fn rejected_configurations() {
        assert!(steady_wave(DiffusivityModel::Isotropic, 0.0, 0.0, 100.0).is_err());
        assert!(steady_wave(DiffusivityModel::PowerLaw { d0: 1.0, n: -2.0 }, 1.0, 0.0, 10.0)
            .is_err());
    }
}
