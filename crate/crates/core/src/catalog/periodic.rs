//! Decaying periodic solution, initially close to a square wave, clamped at
//! two endpoints. In the dimensionless variables the curve obeys
//! Y_tau = Y_XX / (1 + Y_X^2) with Y = 0 at X = 0 and X = ell.

use crate::error::{Error, Result};

use serde::{Deserialize, Serialize};

/// Clamped decaying periodic solution with n extrema on [0, ell].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PeriodicDecay {
    pub n: u32,
    pub ell: f64,
    pub tau0: f64,
    /// Sign choice: `true` selects the branch starting downward.
    pub negative: bool,
}

/// Amplitude of the periodic solution and its two regime approximations.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AmplitudeReport {
    /// |Y| at the extremum K X = pi/2.
    pub exact: f64,
    /// Early regime: K (tau0 - tau) + ln(2)/K.
    pub early_approx: f64,
    /// Late regime: exp(-K^2 (tau - tau0)) / K.
    pub late_approx: f64,
    /// Time at which the early-regime amplitude expression reaches zero:
    /// tau0 + ln(2)/K^2.
    pub decay_time: f64,
}

impl PeriodicDecay {
    pub fn new(n: u32, ell: f64, tau0: f64, negative: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be >= 1"));
        }
        if !(ell > 0.0) {
            return Err(Error::invalid("ell must be positive"));
        }
        Ok(PeriodicDecay {
            n,
            ell,
            tau0,
            negative,
        })
    }

    /// Wavenumber K = n pi / ell; zeros sit at X = 0 and X = ell.
    pub fn k(&self) -> f64 {
        self.n as f64 * std::f64::consts::PI / self.ell
    }
}

/// sin(n pi x / ell) with the phase reduced so that integer multiples of
/// the half period give exactly zero; keeps the clamp values pinned at
/// machine zero even deep in the early regime where the formula would
/// amplify sin() rounding noise by exp(K^2 |dt|).
fn sin_reduced(n: u32, ell: f64, x: f64) -> f64 {
    let m = n as f64 * x / ell;
    let r = m.round();
    let frac = m - r;
    if frac == 0.0 {
        return 0.0;
    }
    let sign = if (r as i64) % 2 == 0 { 1.0 } else { -1.0 };
    sign * (std::f64::consts::PI * frac).sin()
}

/// Y(X, tau) = s/K * ln[(sqrt(exp(2K^2 dt) + sin^2(K X)) + sin(K X)) * exp(-K^2 dt)]
/// with dt = tau - tau0; identically equal to asinh(sin(K X) exp(-K^2 dt))/K,
/// the form evaluated here (exactly odd, no cancellation near the clamps,
/// no overflow until exp(-dt) itself overflows).
pub fn periodic_decay_y(p: &PeriodicDecay, x: f64, tau: f64) -> f64 {
    let k = p.k();
    let dt = k * k * (tau - p.tau0);
    let s = sin_reduced(p.n, p.ell, x);
    let scale = (-dt).exp();
    let val = if s == 0.0 {
        0.0
    } else if scale.is_finite() {
        (s * scale).asinh()
    } else {
        // asinh(z) -> sign(z) (ln(2|z|)) for |z| >> 1
        s.signum() * ((2.0 * s.abs()).ln() - dt)
    };
    let sign = if p.negative { -1.0 } else { 1.0 };
    sign * val / k
}

/// Exact amplitude |Y| at an extremum together with the early/late regime
/// approximations and the early-regime decay time.
pub fn periodic_decay_amplitude(p: &PeriodicDecay, tau: f64) -> AmplitudeReport {
    let k = p.k();
    let x_peak = std::f64::consts::FRAC_PI_2 / k;
    let exact = periodic_decay_y(p, x_peak, tau).abs();
    let early_approx = k * (p.tau0 - tau) + std::f64::consts::LN_2 / k;
    let late_approx = (-k * k * (tau - p.tau0)).exp() / k;
    let decay_time = p.tau0 + std::f64::consts::LN_2 / (k * k);
    AmplitudeReport {
        exact,
        early_approx,
        late_approx,
        decay_time,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn vanishes_at_the_clamps() {
        let p = PeriodicDecay::new(5, 1.0, 0.3, true).unwrap();
        for tau in [-0.5, 0.0, 0.3, 2.0] {
            assert!(periodic_decay_y(&p, 0.0, tau).abs() < 1e-14);
            assert!(periodic_decay_y(&p, 1.0, tau).abs() < 1e-14);
        }
    }

    #[test]
    fn peak_value_at_tau0() {
        // at tau = tau0 and K X = pi/2: |Y| = ln(1 + sqrt 2)/K;
        // frozen from the closed form at K = pi: 0.280549926169590...
        let p = PeriodicDecay::new(1, 1.0, 0.0, false).unwrap();
        let v = periodic_decay_y(&p, 0.5, 0.0);
        assert_abs_diff_eq!(v, 0.280_549_926_169_590_06, epsilon = 1e-13);
        assert_abs_diff_eq!(v, (1.0 + 2.0f64.sqrt()).ln() / PI, epsilon = 1e-14);
    }

    #[test]
    fn early_amplitude_bound() {
        // K = 5 pi, tau0 - tau = 0.07: early bound 5 pi 0.07 + ln2/(5 pi)
        let p = PeriodicDecay::new(5, 1.0, 0.0, true).unwrap();
        let rep = periodic_decay_amplitude(&p, -0.07);
        assert_abs_diff_eq!(rep.early_approx, 1.143_684, epsilon = 1e-4);
        assert!((rep.exact - rep.early_approx).abs() < 0.01 * rep.early_approx);
    }

    #[test]
    fn late_amplitude_is_sinusoidal_decay() {
        let p = PeriodicDecay::new(5, 1.0, 0.0, true).unwrap();
        let k = p.k();
        let tau = 3.0 / (k * k);
        let rep = periodic_decay_amplitude(&p, tau);
        assert!(
            (rep.exact - rep.late_approx).abs() < 0.02 * rep.late_approx,
            "exact {} vs late {}",
            rep.exact,
            rep.late_approx
        );
    }

    #[test]
    fn decay_time_formula() {
        let p = PeriodicDecay::new(5, 1.0, 0.125, true).unwrap();
        let rep = periodic_decay_amplitude(&p, 0.0);
        assert_abs_diff_eq!(
            rep.decay_time,
            0.125 + std::f64::consts::LN_2 / (25.0 * PI * PI),
            epsilon = 1e-15
        );
    }

    #[test]
    fn sign_flag_flips_the_branch() {
        let plus = PeriodicDecay::new(3, 1.0, 0.0, false).unwrap();
        let minus = PeriodicDecay::new(3, 1.0, 0.0, true).unwrap();
        let v = periodic_decay_y(&plus, 0.17, -0.05);
        assert_abs_diff_eq!(v, -periodic_decay_y(&minus, 0.17, -0.05), epsilon = 1e-15);
        assert!(v != 0.0);
    }

    #[test]
    fn no_cancellation_late_in_the_troughs() {
        // deep in the sinusoidal regime the conjugate branch must agree with
        // the peak amplitude by odd symmetry, with no cancellation loss
        let p = PeriodicDecay::new(5, 1.0, 0.0, false).unwrap();
        let k = p.k();
        for a in [2.0, 8.0, 20.0] {
            let tau = a / (k * k);
            let trough = periodic_decay_y(&p, 0.3, tau); // sin(1.5 pi) = -1
            let peak = periodic_decay_amplitude(&p, tau).exact;
            assert_abs_diff_eq!(-trough, peak, epsilon = 1e-12 * peak);
        }
        // leading-order magnitude
        let tau = 8.0 / (k * k);
        let y = periodic_decay_y(&p, 0.3, tau);
        let expect = -(-8.0f64).exp() / k;
        assert_abs_diff_eq!(y, expect, epsilon = 1e-6 * expect.abs());
    }
}
