//! Adaptive explicit Runge-Kutta integration (Dormand-Prince 5(4)) with
//! dense cubic-Hermite output and an optional scalar stopping event.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Cap on the step size; keeps the Hermite dense output at full accuracy.
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rel_tol: 1e-11,
            abs_tol: 1e-13,
            max_step: 0.02,
            max_steps: 2_000_000,
        }
    }
}

/// Accepted steps of one integration, with slopes for dense interpolation.
#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    pub ts: Vec<f64>,
    pub ys: Vec<[f64; N]>,
    pub dys: Vec<[f64; N]>,
    /// Set when the integration was stopped by the event: the final entry is
    /// the refined crossing.
    pub stopped_by_event: bool,
}

impl<const N: usize> OdeSolution<N> {
    pub fn last_t(&self) -> f64 {
        *self.ts.last().expect("nonempty solution")
    }

    pub fn last_y(&self) -> [f64; N] {
        *self.ys.last().expect("nonempty solution")
    }

    /// Cubic Hermite interpolation at `t` inside the integration range.
    pub fn eval(&self, t: f64) -> [f64; N] {
        let n = self.ts.len();
        if t <= self.ts[0] {
            return self.ys[0];
        }
        if t >= self.ts[n - 1] {
            return self.ys[n - 1];
        }
        let j = match self.ts.binary_search_by(|v| v.total_cmp(&t)) {
            Ok(j) => return self.ys[j],
            Err(j) => j - 1,
        };
        hermite(
            self.ts[j],
            self.ts[j + 1],
            &self.ys[j],
            &self.ys[j + 1],
            &self.dys[j],
            &self.dys[j + 1],
            t,
        )
    }
}

fn hermite<const N: usize>(
    t0: f64,
    t1: f64,
    y0: &[f64; N],
    y1: &[f64; N],
    d0: &[f64; N],
    d1: &[f64; N],
    t: f64,
) -> [f64; N] {
    let h = t1 - t0;
    let s = (t - t0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    std::array::from_fn(|i| h00 * y0[i] + h * h10 * d0[i] + h01 * y1[i] + h * h11 * d1[i])
}

/// Integrate y' = rhs(t, y) from t0 to tf (forward, tf > t0). When `event`
/// is given, stop at the first crossing of event(t, y) from negative to
/// nonnegative, refined by bisection on the dense output.
pub fn integrate<const N: usize, F, E>(
    rhs: F,
    t_span: (f64, f64),
    y0: [f64; N],
    opts: &OdeOptions,
    event: Option<E>,
) -> Result<OdeSolution<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    E: Fn(f64, &[f64; N]) -> f64,
{
    let (t0, tf) = t_span;
    if !(tf > t0) {
        return Err(Error::invalid("integration span must be forward"));
    }
    // Dormand-Prince 5(4) tableau
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
    // 4th-order weights for the error estimate
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let mut t = t0;
    let mut y = y0;
    let mut f = rhs(t, &y);
    let mut h = opts.max_step.min((tf - t0) / 100.0).max(1e-12);
    let mut sol = OdeSolution {
        ts: vec![t],
        ys: vec![y],
        dys: vec![f],
        stopped_by_event: false,
    };
    let mut ev_prev = event.as_ref().map(|e| e(t, &y));
    for _step in 0..opts.max_steps {
        if t >= tf {
            return Ok(sol);
        }
        h = h.min(tf - t);
        let mut k = [[0.0; N]; 7];
        k[0] = f;
        for stage in 0..6 {
            let yi: [f64; N] = std::array::from_fn(|i| {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(stage + 1) {
                    acc += h * A[stage][j] * kj[i];
                }
                acc
            });
            k[stage + 1] = rhs(t + C[stage] * h, &yi);
        }
        // 5th-order solution is the stage-6 state (FSAL)
        let y5: [f64; N] = std::array::from_fn(|i| {
            let mut acc = y[i];
            for (j, kj) in k.iter().enumerate().take(6) {
                acc += h * A[5][j] * kj[i];
            }
            acc
        });
        let y4: [f64; N] = std::array::from_fn(|i| {
            let mut acc = y[i];
            for (j, kj) in k.iter().enumerate() {
                acc += h * B4[j] * kj[i];
            }
            acc
        });
        let mut err: f64 = 0.0;
        for i in 0..N {
            let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y5[i].abs());
            let e = (y5[i] - y4[i]) / scale;
            err += e * e;
        }
        let err = (err / N as f64).sqrt();
        if !err.is_finite() {
            // retreat hard from a poisoned region
            h *= 0.1;
            if h < 1e-15 * (1.0 + t.abs()) {
                return Err(Error::Instability {
                    t,
                    context: "step size underflow (non-finite right-hand side)".into(),
                });
            }
            continue;
        }
        if err <= 1.0 {
            // accept
            let t_new = t + h;
            let f_new = k[6];
            sol.ts.push(t_new);
            sol.ys.push(y5);
            sol.dys.push(f_new);
            if let (Some(e), Some(prev)) = (event.as_ref(), ev_prev) {
                let ev_new = e(t_new, &y5);
                if prev < 0.0 && ev_new >= 0.0 {
                    // refine the crossing on the dense output
                    let (mut lo, mut hi) = (t, t_new);
                    for _ in 0..80 {
                        let mid = 0.5 * (lo + hi);
                        let ym = sol.eval(mid);
                        if e(mid, &ym) >= 0.0 {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    let tc = hi;
                    let yc = sol.eval(tc);
                    // replace the last record with the crossing
                    sol.ts.pop();
                    sol.ys.pop();
                    sol.dys.pop();
                    let dyc = rhs(tc, &yc);
                    sol.ts.push(tc);
                    sol.ys.push(yc);
                    sol.dys.push(dyc);
                    sol.stopped_by_event = true;
                    return Ok(sol);
                }
                ev_prev = Some(ev_new);
            }
            t = t_new;
            y = y5;
            f = f_new;
        }
        // PI-free step control
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h * factor).min(opts.max_step);
        if h < 1e-15 * (1.0 + t.abs()) {
            return Err(Error::Instability {
                t,
                context: "step size underflow".into(),
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: opts.max_steps,
        context: format!("integration stalled at t = {t}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exponential_decay_to_high_accuracy() {
        let sol = integrate(
            |_t, y: &[f64; 1]| [-y[0]],
            (0.0, 5.0),
            [1.0],
            &OdeOptions::default(),
            None::<fn(f64, &[f64; 1]) -> f64>,
        )
        .unwrap();
        assert_abs_diff_eq!(sol.last_y()[0], (-5.0f64).exp(), epsilon = 1e-12);
        // dense output
        let mid = sol.eval(2.5)[0];
        assert_abs_diff_eq!(mid, (-2.5f64).exp(), epsilon = 1e-10);
    }

    #[test]
    fn harmonic_oscillator_energy() {
        let sol = integrate(
            |_t, y: &[f64; 2]| [y[1], -y[0]],
            (0.0, 20.0),
            [1.0, 0.0],
            &OdeOptions::default(),
            None::<fn(f64, &[f64; 2]) -> f64>,
        )
        .unwrap();
        let [x, v] = sol.last_y();
        assert_abs_diff_eq!(x, 20.0f64.cos(), epsilon = 1e-9);
        assert_abs_diff_eq!(v, -20.0f64.sin(), epsilon = 1e-9);
    }

    #[test]
    fn event_stops_at_threshold() {
        // y' = y, stop when y = e
        let sol = integrate(
            |_t, y: &[f64; 1]| [y[0]],
            (0.0, 10.0),
            [1.0],
            &OdeOptions::default(),
            Some(|_t: f64, y: &[f64; 1]| y[0] - std::f64::consts::E),
        )
        .unwrap();
        assert!(sol.stopped_by_event);
        assert_abs_diff_eq!(sol.last_t(), 1.0, epsilon = 1e-9);
    }
}
