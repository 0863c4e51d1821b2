//! Curve representations and differential-geometric diagnostics.
//!
//! Two sampled representations are used throughout: [`GraphPatch`] for curves
//! expressible as y(x) over a strictly increasing grid, and [`PlaneCurve`]
//! for general (optionally closed) polylines. Diagnostics follow the sign
//! convention that a positively oriented (counterclockwise) convex curve has
//! positive curvature.

use crate::error::{Error, Result};

use serde::{Deserialize, Serialize};

/// A sampled graph y(x) at one instant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphPatch {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub time_stamp: f64,
}

impl GraphPatch {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, time_stamp: f64) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::invalid("xs and ys must have equal length"));
        }
        if xs.len() < 3 {
            return Err(Error::invalid("a graph patch needs at least 3 nodes"));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("xs must be strictly increasing"));
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(Error::invalid("graph patch values must be finite"));
        }
        Ok(GraphPatch { xs, ys, time_stamp })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Grid spacing if the grid is uniform to relative 1e-9, else None.
    pub fn uniform_spacing(&self) -> Option<f64> {
        let h = (self.xs[self.xs.len() - 1] - self.xs[0]) / (self.xs.len() - 1) as f64;
        let ok = self
            .xs
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h);
        ok.then_some(h)
    }

    /// View as an open polyline.
    pub fn to_curve(&self) -> PlaneCurve {
        PlaneCurve {
            vertices: self
                .xs
                .iter()
                .zip(&self.ys)
                .map(|(&x, &y)| (x, y))
                .collect(),
            closed: false,
            time_stamp: self.time_stamp,
        }
    }
}

/// A sampled plane curve: ordered vertices, optionally closed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaneCurve {
    pub vertices: Vec<(f64, f64)>,
    pub closed: bool,
    pub time_stamp: f64,
}

impl PlaneCurve {
    /// Validating constructor. Closed curves must have >= 8 vertices, no
    /// coincident consecutive vertices, and be simple (checked by a
    /// segment-intersection sweep).
    pub fn new(vertices: Vec<(f64, f64)>, closed: bool, time_stamp: f64) -> Result<Self> {
        let curve = Self::new_unchecked_simple(vertices, closed, time_stamp)?;
        if closed {
            curve.check_simple()?;
        }
        Ok(curve)
    }

    /// Constructor that runs the cheap invariants but skips the simplicity
    /// sweep; the closed-curve evolver uses this between full checks.
    pub fn new_unchecked_simple(
        vertices: Vec<(f64, f64)>,
        closed: bool,
        time_stamp: f64,
    ) -> Result<Self> {
        if closed && vertices.len() < 8 {
            return Err(Error::invalid("a closed curve needs at least 8 vertices"));
        }
        if !closed && vertices.len() < 2 {
            return Err(Error::invalid("an open curve needs at least 2 vertices"));
        }
        if vertices.iter().any(|v| !v.0.is_finite() || !v.1.is_finite()) {
            return Err(Error::invalid("curve vertices must be finite"));
        }
        let n = vertices.len();
        let pairs = if closed { n } else { n - 1 };
        for i in 0..pairs {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            if a == b {
                return Err(Error::invalid(format!(
                    "consecutive vertices {i} and {} coincide",
                    (i + 1) % n
                )));
            }
        }
        Ok(PlaneCurve {
            vertices,
            closed,
            time_stamp,
        })
    }

    /// Counterclockwise ellipse x = a cos, y = b sin with `n` vertices.
    pub fn ellipse(a: f64, b: f64, n: usize, time_stamp: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::invalid("ellipse semi-axes must be positive"));
        }
        let vertices = (0..n)
            .map(|i| {
                let th = std::f64::consts::TAU * i as f64 / n as f64;
                (a * th.cos(), b * th.sin())
            })
            .collect();
        PlaneCurve::new(vertices, true, time_stamp)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of polyline segments (includes the wrap segment when closed).
    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    pub(crate) fn segment(&self, i: usize) -> ((f64, f64), (f64, f64)) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    /// Simplicity check by a sweep over segments ordered by minimum x.
    /// Adjacent segments (sharing a vertex) are exempt.
    pub fn check_simple(&self) -> Result<()> {
        let m = self.segment_count();
        let mut order: Vec<usize> = (0..m).collect();
        let min_x = |i: usize| {
            let (a, b) = self.segment(i);
            a.0.min(b.0)
        };
        let max_x = |i: usize| {
            let (a, b) = self.segment(i);
            a.0.max(b.0)
        };
        order.sort_by(|&i, &j| min_x(i).total_cmp(&min_x(j)));
        let mut active: Vec<usize> = Vec::new();
        for &i in &order {
            let lo = min_x(i);
            active.retain(|&j| max_x(j) >= lo);
            for &j in &active {
                if self.adjacent_segments(i, j) {
                    continue;
                }
                let (a, b) = self.segment(i);
                let (c, d) = self.segment(j);
                if segments_intersect(a, b, c, d) {
                    return Err(Error::SelfIntersection {
                        seg_a: i.min(j),
                        seg_b: i.max(j),
                    });
                }
            }
            active.push(i);
        }
        Ok(())
    }

    fn adjacent_segments(&self, i: usize, j: usize) -> bool {
        let n = self.vertices.len();
        let next = |k: usize| (k + 1) % n;
        i == j || next(i) == j || next(j) == i
    }

    /// Polyline arclength (chord sum), including the closing segment when
    /// closed.
    pub fn arclength(&self) -> f64 {
        (0..self.segment_count())
            .map(|i| {
                let (a, b) = self.segment(i);
                (b.0 - a.0).hypot(b.1 - a.1)
            })
            .sum()
    }

    /// Shoelace area: positive for counterclockwise orientation.
    pub fn signed_area(&self) -> Result<f64> {
        if !self.closed {
            return Err(Error::OpenCurve {
                context: "signed area requires a closed curve".into(),
            });
        }
        let n = self.vertices.len();
        let mut sum = 0.0;
        for i in 0..n {
            let (xa, ya) = self.vertices[i];
            let (xb, yb) = self.vertices[(i + 1) % n];
            sum += xa * yb - xb * ya;
        }
        Ok(0.5 * sum)
    }

    /// Area centroid of the enclosed polygon.
    pub fn centroid(&self) -> Result<(f64, f64)> {
        let area = self.signed_area()?;
        if area.abs() < 1e-300 {
            return Err(Error::invalid("degenerate polygon: zero area"));
        }
        let n = self.vertices.len();
        let (mut cx, mut cy) = (0.0, 0.0);
        for i in 0..n {
            let (xa, ya) = self.vertices[i];
            let (xb, yb) = self.vertices[(i + 1) % n];
            let w = xa * yb - xb * ya;
            cx += (xa + xb) * w;
            cy += (ya + yb) * w;
        }
        Ok((cx / (6.0 * area), cy / (6.0 * area)))
    }
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Proper or touching intersection of segments ab and cd.
fn segments_intersect(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| {
        cross(p, q, r) == 0.0
            && r.0 >= p.0.min(q.0)
            && r.0 <= p.0.max(q.0)
            && r.1 >= p.1.min(q.1)
            && r.1 <= p.1.max(q.1)
    };
    on(c, d, a) || on(c, d, b) || on(a, b, c) || on(a, b, d)
}

/// Diagnostics of a closed curve.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CurveDiagnostics {
    pub kappa_max: f64,
    pub kappa_min: f64,
    pub eccentricity: f64,
    /// Minimum distance from the area centroid to the polyline.
    pub inradius: f64,
    /// Maximum distance from the area centroid to the vertices.
    pub circumradius: f64,
    pub arclength: f64,
    pub enclosed_area: f64,
}

/// Discrete curvature of a polyline with collinearity flags.
#[derive(Debug, Clone)]
pub struct CurveCurvature {
    pub kappa: Vec<f64>,
    /// True where the vertex triple was collinear within tolerance and the
    /// curvature was reported as 0.
    pub collinear: Vec<bool>,
}

/// First and second derivative at `at` of the quadratic through three nodes.
fn quadratic_derivs(x: [f64; 3], y: [f64; 3], at: f64) -> (f64, f64) {
    let f01 = (y[1] - y[0]) / (x[1] - x[0]);
    let f12 = (y[2] - y[1]) / (x[2] - x[1]);
    let f012 = (f12 - f01) / (x[2] - x[0]);
    let dy = f01 + f012 * (2.0 * at - x[0] - x[1]);
    (dy, 2.0 * f012)
}

/// Signed curvature of a graph, kappa = y'' / (1 + y'^2)^(3/2), by
/// quadratic-fit stencils: centered in the interior, one-sided (still
/// second order) at the two boundary nodes. Exact for quadratics.
pub fn curvature_of_graph(patch: &GraphPatch) -> Result<Vec<f64>> {
    let n = patch.len();
    if n < 3 {
        return Err(Error::invalid("curvature needs at least 3 nodes"));
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let j = i.clamp(1, n - 2);
        let xs = [patch.xs[j - 1], patch.xs[j], patch.xs[j + 1]];
        let ys = [patch.ys[j - 1], patch.ys[j], patch.ys[j + 1]];
        let (dy, d2y) = quadratic_derivs(xs, ys, patch.xs[i]);
        out.push(d2y / (1.0 + dy * dy).powf(1.5));
    }
    Ok(out)
}

/// Discrete signed curvature of a polyline by the circumscribed-circle
/// (Menger) formula on consecutive vertex triples. Open curves copy the
/// neighbouring interior value onto the two endpoints.
pub fn curvature_of_curve(curve: &PlaneCurve) -> Result<CurveCurvature> {
    let n = curve.len();
    if n < 3 {
        return Err(Error::invalid("curvature needs at least 3 vertices"));
    }
    let mut kappa = vec![0.0; n];
    let mut collinear = vec![false; n];
    let (lo, hi) = if curve.closed { (0, n) } else { (1, n - 1) };
    for i in lo..hi {
        let a = curve.vertices[(i + n - 1) % n];
        let b = curve.vertices[i];
        let c = curve.vertices[(i + 1) % n];
        let ab = (b.0 - a.0).hypot(b.1 - a.1);
        let bc = (c.0 - b.0).hypot(c.1 - b.1);
        let ca = (a.0 - c.0).hypot(a.1 - c.1);
        let twice_area = cross(a, b, c);
        // collinear within tolerance: height of b over ac negligible
        if twice_area.abs() <= 1e-12 * ab * bc {
            kappa[i] = 0.0;
            collinear[i] = true;
        } else {
            kappa[i] = 2.0 * twice_area / (ab * bc * ca);
        }
    }
    if !curve.closed {
        kappa[0] = kappa[1];
        collinear[0] = collinear[1];
        kappa[n - 1] = kappa[n - 2];
        collinear[n - 1] = collinear[n - 2];
    }
    Ok(CurveCurvature { kappa, collinear })
}

/// Eccentricity from axis-aligned half-extents with the major axis along y:
/// sqrt(1 - (x_max/y_max)^2).
pub fn eccentricity(x_max: f64, y_max: f64) -> Result<f64> {
    if !(x_max > 0.0) {
        return Err(Error::domain("x_max > 0", x_max));
    }
    if x_max > y_max {
        return Err(Error::domain(
            "x_max <= y_max (orient the major axis along y)",
            x_max / y_max,
        ));
    }
    let r = x_max / y_max;
    Ok((1.0 - r * r).max(0.0).sqrt())
}

fn point_segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (vx, vy) = (b.0 - a.0, b.1 - a.1);
    let (wx, wy) = (p.0 - a.0, p.1 - a.1);
    let t = ((wx * vx + wy * vy) / (vx * vx + vy * vy)).clamp(0.0, 1.0);
    (wx - t * vx).hypot(wy - t * vy)
}

/// Diagnostics for a closed, simple curve: arclength by segment summation,
/// area by shoelace, inradius/circumradius as min/max distance from the area
/// centroid (a proxy for the true inscribed/circumscribed radii that
/// converges to them as the curve rounds off), curvature extrema by the
/// Menger formula, eccentricity from the axis-aligned half-extents.
pub fn diagnostics(curve: &PlaneCurve) -> Result<CurveDiagnostics> {
    if !curve.closed {
        return Err(Error::OpenCurve {
            context: "diagnostics requires a closed curve (arclength is available separately)"
                .into(),
        });
    }
    let area = curve.signed_area()?;
    let centroid = curve.centroid()?;
    let inradius = (0..curve.segment_count())
        .map(|i| {
            let (a, b) = curve.segment(i);
            point_segment_distance(centroid, a, b)
        })
        .fold(f64::INFINITY, f64::min);
    let circumradius = curve
        .vertices
        .iter()
        .map(|&(x, y)| (x - centroid.0).hypot(y - centroid.1))
        .fold(0.0, f64::max);
    let cc = curvature_of_curve(curve)?;
    let kappa_max = cc.kappa.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let kappa_min = cc.kappa.iter().copied().fold(f64::INFINITY, f64::min);
    let (mut xlo, mut xhi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ylo, mut yhi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &curve.vertices {
        xlo = xlo.min(x);
        xhi = xhi.max(x);
        ylo = ylo.min(y);
        yhi = yhi.max(y);
    }
    let half_x = 0.5 * (xhi - xlo);
    let half_y = 0.5 * (yhi - ylo);
    let ecc = eccentricity(half_x.min(half_y), half_x.max(half_y))?;
    Ok(CurveDiagnostics {
        kappa_max,
        kappa_min,
        eccentricity: ecc,
        inradius,
        circumradius,
        arclength: curve.arclength(),
        enclosed_area: area.abs(),
    })
}

// ---------------------------------------------------------------------------
// Uniform-arclength resampling (closed curves)
// ---------------------------------------------------------------------------

/// Resample a closed curve to `n` vertices equally spaced in (polyline)
/// arclength, interpolating positions with a periodic Catmull-Rom spline so
/// that repeated resampling does not erode the curve.
pub fn resample_closed_uniform(curve: &PlaneCurve, n: usize) -> Result<PlaneCurve> {
    if !curve.closed {
        return Err(Error::OpenCurve {
            context: "uniform resampling implemented for closed curves".into(),
        });
    }
    let m = curve.len();
    let verts = &curve.vertices;
    // cumulative chord lengths, s[0] = 0 .. s[m] = total
    let mut s = Vec::with_capacity(m + 1);
    s.push(0.0);
    for i in 0..m {
        let (a, b) = curve.segment(i);
        s.push(s[i] + (b.0 - a.0).hypot(b.1 - a.1));
    }
    let total = s[m];
    let catmull = |i: usize, t: f64| -> (f64, f64) {
        let p0 = verts[(i + m - 1) % m];
        let p1 = verts[i];
        let p2 = verts[(i + 1) % m];
        let p3 = verts[(i + 2) % m];
        let t2 = t * t;
        let t3 = t2 * t;
        let w0 = -0.5 * t3 + t2 - 0.5 * t;
        let w1 = 1.5 * t3 - 2.5 * t2 + 1.0;
        let w2 = -1.5 * t3 + 2.0 * t2 + 0.5 * t;
        let w3 = 0.5 * t3 - 0.5 * t2;
        (
            w0 * p0.0 + w1 * p1.0 + w2 * p2.0 + w3 * p3.0,
            w0 * p0.1 + w1 * p1.1 + w2 * p2.1 + w3 * p3.1,
        )
    };
    let mut out = Vec::with_capacity(n);
    let mut seg = 0usize;
    for k in 0..n {
        let target = total * k as f64 / n as f64;
        while seg + 1 < m && s[seg + 1] < target {
            seg += 1;
        }
        let t = (target - s[seg]) / (s[seg + 1] - s[seg]);
        out.push(catmull(seg, t));
    }
    PlaneCurve::new_unchecked_simple(out, true, curve.time_stamp)
}
