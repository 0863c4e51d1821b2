//! Special functions and numerical primitives.
//!
//! Everything here is self-contained double-precision code: the error
//! function, the incomplete elliptic integral of the first kind, Jacobi
//! elliptic functions sn/cn/dn, adaptive quadrature with endpoint-singularity
//! handling, bracketed monotone inversion, and a fourth-order cumulative
//! integral over sampled data.

use crate::error::{Error, Result};

use serde::{Deserialize, Serialize};

/// Iteration/tolerance budget shared by the iterative primitives.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iterations: usize,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iterations: usize) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(Error::invalid(format!("abs_tol must be > 0, got {abs_tol}")));
        }
        if !(rel_tol > 0.0) {
            return Err(Error::invalid(format!("rel_tol must be > 0, got {rel_tol}")));
        }
        if max_iterations == 0 {
            return Err(Error::invalid("max_iterations must be >= 1"));
        }
        Ok(Tolerance {
            abs_tol,
            rel_tol,
            max_iterations,
        })
    }

    /// Tighter absolute tolerance, same budget.
    pub fn with_abs(self, abs_tol: f64) -> Self {
        Tolerance { abs_tol, ..self }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_iterations: 10_000,
        }
    }
}

/// Amplitude/parameter pair for the incomplete elliptic integral F(phi | m).
#[derive(Debug, Clone, Copy)]
pub struct EllipticArgs {
    /// Amplitude phi in radians, |phi| <= pi/2.
    pub amplitude: f64,
    /// Parameter m (the square of the modulus), 0 <= m < 1.
    pub parameter: f64,
}

// ---------------------------------------------------------------------------
// Error function
// ---------------------------------------------------------------------------

/// Error function, |error| <= 1e-14 absolute.
///
/// Maclaurin series for |x| <= 2 (Kahan-compensated), Lentz continued
/// fraction for erfc beyond. The crossover sits at 2 rather than further out
/// because the alternating series loses too many digits to cancellation once
/// the largest term exceeds ~10.
pub fn erf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x < 0.0 {
        return -erf(-x);
    }
    if x <= 2.0 {
        erf_series(x)
    } else {
        // clamp so |erf| < 1 holds even where 1 - erfc rounds to 1
        (1.0 - erfc_cf(x)).min(ONE_MINUS_ULP)
    }
}

const ONE_MINUS_ULP: f64 = 1.0 - f64::EPSILON / 2.0;

/// Complementary error function, accurate for x >= 0.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        2.0 - erfc(-x)
    } else if x <= 2.0 {
        1.0 - erf_series(x)
    } else {
        erfc_cf(x)
    }
}

fn erf_series(x: f64) -> f64 {
    // erf(x) = 2/sqrt(pi) * sum_n (-1)^n x^(2n+1) / (n! (2n+1))
    let x2 = x * x;
    let mut power = x; // x^(2n+1) / n!
    let mut sum = 0.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut n = 0u32;
    loop {
        let term = if n % 2 == 0 { 1.0 } else { -1.0 } * power / f64::from(2 * n + 1);
        let t = sum + (term - comp);
        comp = (t - sum) - (term - comp);
        sum = t;
        n += 1;
        power *= x2 / f64::from(n);
        if power == 0.0 || power / f64::from(2 * n + 1) < 1e-18 * sum.abs() || n > 200 {
            break;
        }
    }
    std::f64::consts::FRAC_2_SQRT_PI * sum
}

fn erfc_cf(x: f64) -> f64 {
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/g with the continued fraction
    // g = x + (1/2)/(x + 1/(x + (3/2)/(x + 2/(x + ...)))),
    // evaluated by the modified Lentz algorithm.
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..200 {
        let a = 0.5 * n as f64;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (std::f64::consts::PI.sqrt() * f)
}

// ---------------------------------------------------------------------------
// Elliptic integrals and Jacobi elliptic functions
// ---------------------------------------------------------------------------

/// Carlson symmetric integral R_F(x, y, z) by the duplication theorem.
/// Requires nonnegative arguments with at most one zero.
fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        let mu = (x + y + z) / 3.0;
        let eps = (x - mu).abs().max((y - mu).abs()).max((z - mu).abs()) / mu;
        if eps < 1e-4 {
            let xd = 1.0 - x / mu;
            let yd = 1.0 - y / mu;
            let zd = -xd - yd;
            let e2 = xd * yd - zd * zd;
            let e3 = xd * yd * zd;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0)
                / mu.sqrt();
        }
    }
}

/// Incomplete elliptic integral of the first kind,
/// F(phi | m) = integral_0^phi (1 - m sin^2 s)^(-1/2) ds.
///
/// Evaluated through the Carlson form F = sin(phi) R_F(cos^2 phi,
/// 1 - m sin^2 phi, 1), which is uniformly accurate up to the quarter
/// period.
pub fn elliptic_f(args: EllipticArgs) -> Result<f64> {
    let EllipticArgs {
        amplitude: phi,
        parameter: m,
    } = args;
    if !(0.0..1.0).contains(&m) {
        return Err(Error::domain("0 <= m < 1", m));
    }
    if !(phi.abs() <= std::f64::consts::FRAC_PI_2 + 1e-15) {
        return Err(Error::domain("|phi| <= pi/2", phi));
    }
    let s = phi.sin();
    let c = phi.cos();
    if s == 0.0 {
        return Ok(0.0);
    }
    Ok(s * carlson_rf(c * c, 1.0 - m * s * s, 1.0))
}

/// Complete elliptic integral of the first kind K(m) = F(pi/2 | m).
pub fn elliptic_k(m: f64) -> Result<f64> {
    elliptic_f(EllipticArgs {
        amplitude: std::f64::consts::FRAC_PI_2,
        parameter: m,
    })
}

/// Jacobi elliptic functions (sn, cn, dn) at argument `u`, parameter `m`,
/// by the descending Landen transformation (ascending AGM scale with
/// backward recurrence).
pub fn jacobi_sn_cn_dn(u: f64, m: f64) -> Result<(f64, f64, f64)> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::domain("0 <= m < 1", m));
    }
    if m == 0.0 {
        return Ok((u.sin(), u.cos(), 1.0));
    }
    const CA: f64 = 1e-10;
    const NMAX: usize = 20;
    let mut emc = 1.0 - m;
    let mut a = 1.0f64;
    let mut dn = 1.0f64;
    let mut em = [0.0f64; NMAX];
    let mut en = [0.0f64; NMAX];
    let mut c = 0.0f64;
    let mut l = 0usize;
    for i in 0..NMAX {
        l = i;
        em[i] = a;
        emc = emc.sqrt();
        en[i] = emc;
        c = 0.5 * (a + emc);
        if (a - emc).abs() <= CA * a {
            break;
        }
        emc *= a;
        a = c;
    }
    let uu = u * c;
    let mut sn = uu.sin();
    let mut cn = uu.cos();
    if sn.abs() > f64::EPSILON {
        let mut aa = cn / sn;
        c *= aa;
        for i in (0..=l).rev() {
            let b = em[i];
            aa *= c;
            c *= dn;
            dn = (en[i] + aa) / (b + aa);
            aa = c / b;
        }
        let amp = 1.0 / (c * c + 1.0).sqrt();
        sn = if sn >= 0.0 { amp } else { -amp };
        cn = c * sn;
    }
    Ok((sn, cn, dn))
}

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

/// 10-point Gauss-Legendre nodes and weights on [-1, 1]. The rule is open
/// (no endpoint evaluations), so integrands may be singular at interval ends.
const GL10: [(f64, f64); 10] = [
    (-0.9739065285171717, 0.06667134430868807),
    (-0.8650633666889845, 0.14945134915058036),
    (-0.6794095682990244, 0.219086362515982),
    (-0.4333953941292472, 0.2692667193099965),
    (-0.14887433898163122, 0.295524224714753),
    (0.14887433898163122, 0.295524224714753),
    (0.4333953941292472, 0.2692667193099965),
    (0.6794095682990244, 0.219086362515982),
    (0.8650633666889845, 0.14945134915058036),
    (0.9739065285171717, 0.06667134430868807),
];

fn gl10<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (node, weight) in GL10 {
        sum += weight * f(mid + half * node);
    }
    sum * half
}

struct Segment {
    a: f64,
    b: f64,
    coarse: f64,
}

/// Globally adaptive Gauss-Legendre quadrature on [a, b] for an integrand
/// that is finite at every interior point. Worst-error-first refinement.
pub fn quad_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return quad_adaptive(f, b, a, tol).map(|v| -v);
    }
    // (refined value, error estimate, children) for one segment
    let refine = |seg: &Segment| -> (f64, f64, Segment, Segment) {
        let mid = 0.5 * (seg.a + seg.b);
        let left = gl10(&f, seg.a, mid);
        let right = gl10(&f, mid, seg.b);
        let val = left + right;
        let err = (val - seg.coarse).abs();
        (
            val,
            err,
            Segment {
                a: seg.a,
                b: mid,
                coarse: left,
            },
            Segment {
                a: mid,
                b: seg.b,
                coarse: right,
            },
        )
    };

    // worklist of (error, value, segment children pending)
    struct Entry {
        err: f64,
        val: f64,
        seg: Segment,
    }
    let root = Segment {
        a,
        b,
        coarse: gl10(&f, a, b),
    };
    let (val, err, l, r) = refine(&root);
    if !val.is_finite() {
        return Err(Error::NonConvergence {
            iterations: 0,
            context: "non-finite integrand sample".into(),
        });
    }
    let mut entries: Vec<Entry> = vec![
        Entry {
            err: 0.5 * err,
            val: l.coarse,
            seg: l,
        },
        Entry {
            err: 0.5 * err,
            val: r.coarse,
            seg: r,
        },
    ];
    let mut total = val;
    let mut total_err = err;
    let mut iterations = 0usize;
    loop {
        if total_err <= tol.abs_tol.max(tol.rel_tol * total.abs()) {
            return Ok(total);
        }
        iterations += 1;
        if iterations > tol.max_iterations {
            return Err(Error::NonConvergence {
                iterations,
                context: format!(
                    "quadrature error estimate {total_err:.3e} above tolerance \
                     (divergent or pathological integrand?)"
                ),
            });
        }
        // pop the worst segment
        let worst = entries
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| x.err.total_cmp(&y.err))
            .map(|(i, _)| i)
            .expect("worklist never empty");
        let entry = entries.swap_remove(worst);
        total -= entry.val;
        total_err -= entry.err;
        let (val, err, l, r) = refine(&entry.seg);
        if !val.is_finite() {
            return Err(Error::NonConvergence {
                iterations,
                context: "non-finite integrand sample".into(),
            });
        }
        total += val;
        total_err += err;
        entries.push(Entry {
            err: 0.5 * err,
            val: l.coarse,
            seg: l,
        });
        entries.push(Entry {
            err: 0.5 * err,
            val: r.coarse,
            seg: r,
        });
    }
}

/// Integrate `f` over [a, b] where `f` may have integrable singularities at
/// the endpoints (up to inverse-square-root blow-up, e.g. (cos s)^(-1/2) at
/// s = pi/2).
///
/// Each half is regularised by the substitution s = endpoint -/+ w^2 before
/// adaptive refinement, so the singular endpoint is never sampled and
/// square-root singularities become smooth.
pub fn quad_singular<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return quad_singular(f, b, a, tol).map(|v| -v);
    }
    let mid = 0.5 * (a + b);
    let half_tol = Tolerance {
        abs_tol: 0.5 * tol.abs_tol,
        ..*tol
    };
    let left = quad_adaptive(|w| 2.0 * w * f(a + w * w), 0.0, (mid - a).sqrt(), &half_tol)?;
    let right = quad_adaptive(|w| 2.0 * w * f(b - w * w), 0.0, (b - mid).sqrt(), &half_tol)?;
    Ok(left + right)
}

// ---------------------------------------------------------------------------
// Monotone inversion
// ---------------------------------------------------------------------------

/// Solve g(x) = target for strictly monotone continuous `g` on the bracket,
/// by a safeguarded secant/bisection hybrid. Returns x with
/// |g(x) - target| <= tol.abs_tol.
pub fn invert_monotone<G: Fn(f64) -> Result<f64>>(
    g: G,
    target: f64,
    bracket: (f64, f64),
    tol: &Tolerance,
) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut flo = g(lo)? - target;
    let mut fhi = g(hi)? - target;
    if flo.abs() <= tol.abs_tol {
        return Ok(lo);
    }
    if fhi.abs() <= tol.abs_tol {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Bracket {
            target,
            lo,
            hi,
        });
    }
    let mut x = 0.5 * (lo + hi);
    for iteration in 0..tol.max_iterations {
        // secant step from the bracket endpoints, safeguarded by bisection
        let secant = lo - flo * (hi - lo) / (fhi - flo);
        let width = hi - lo;
        x = if secant.is_finite() && secant > lo + 1e-3 * width && secant < hi - 1e-3 * width {
            secant
        } else {
            0.5 * (lo + hi)
        };
        let fx = g(x)? - target;
        if fx.abs() <= tol.abs_tol {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(lo.abs()).max(1.0) {
            // bracket exhausted at machine resolution
            return Ok(if flo.abs() < fhi.abs() { lo } else { hi });
        }
        let _ = iteration;
    }
    Err(Error::NonConvergence {
        iterations: tol.max_iterations,
        context: format!("monotone inversion stalled near x = {x}"),
    })
}

// ---------------------------------------------------------------------------
// Cumulative integration of samples
// ---------------------------------------------------------------------------

/// Integral over [a, b] of the cubic through (xs[i], ys[i]), i = 0..4,
/// via Newton divided differences expanded about xs[0].
fn cubic_panel(xs: &[f64], ys: &[f64], a: f64, b: f64) -> f64 {
    let x0 = xs[0];
    let d1 = xs[1] - x0;
    let d2 = xs[2] - x0;
    // divided differences
    let f01 = (ys[1] - ys[0]) / (xs[1] - xs[0]);
    let f12 = (ys[2] - ys[1]) / (xs[2] - xs[1]);
    let f23 = (ys[3] - ys[2]) / (xs[3] - xs[2]);
    let f012 = (f12 - f01) / (xs[2] - xs[0]);
    let f123 = (f23 - f12) / (xs[3] - xs[1]);
    let f0123 = (f123 - f012) / (xs[3] - xs[0]);
    let (at, bt) = (a - x0, b - x0);
    let p1 = |t: f64| 0.5 * t * t;
    let p2 = |t: f64| t * t * t / 3.0 - d1 * 0.5 * t * t;
    let p3 = |t: f64| 0.25 * t * t * t * t - (d1 + d2) * t * t * t / 3.0 + d1 * d2 * 0.5 * t * t;
    ys[0] * (bt - at)
        + f01 * (p1(bt) - p1(at))
        + f012 * (p2(bt) - p2(at))
        + f0123 * (p3(bt) - p3(at))
}

/// Cumulative integral of sampled data: returns c with c[0] = 0 and
/// c[i] = integral of the sampled function from xs[0] to xs[i], computed by
/// piecewise-cubic interpolation (fourth-order on smooth data).
///
/// `xs` must be strictly increasing with at least 4 samples.
pub fn cumulative_integral(xs: &[f64], ys: &[f64]) -> Result<Vec<f64>> {
    let n = xs.len();
    if n != ys.len() {
        return Err(Error::invalid("xs and ys must have equal length"));
    }
    if n < 4 {
        return Err(Error::invalid("cumulative_integral needs at least 4 samples"));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("xs must be strictly increasing"));
    }
    let mut out = Vec::with_capacity(n);
    out.push(0.0);
    let mut acc = 0.0;
    for i in 0..n - 1 {
        // stencil of 4 points containing interval [i, i+1]
        let start = i.saturating_sub(1).min(n - 4);
        acc += cubic_panel(
            &xs[start..start + 4],
            &ys[start..start + 4],
            xs[i],
            xs[i + 1],
        );
        out.push(acc);
    }
    Ok(out)
}
