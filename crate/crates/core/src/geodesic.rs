//! Spray coefficients, geodesic integration and the length functional.

use crate::diff::{self, Stencil};
use crate::error::{GeomError, Result};
use crate::finsler::{fundamental_tensor_with, FinslerMetric};
use crate::klein;
use crate::linalg::{Point2, Vec2};

/// `(G¹, G²)` at a fixed `(x, ξ)`.
pub type SprayCoeffs = Vec2;

/// Closed-form spray of the Klein-disc Funk metric.
pub fn spray_closed(x: Point2, xi: Vec2) -> Result<SprayCoeffs> {
    klein::funk_spray(x, xi)
}

/// Finite-difference steps of the numeric spray: a relative fibre step and a
/// base-point step capped by a fraction of the distance to the boundary.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SpraySteps {
    pub fibre: f64,
    pub base: f64,
    pub boundary_fraction: f64,
}

impl SpraySteps {
    /// Steps for a direct evaluation.
    pub const DIRECT: SpraySteps = SpraySteps {
        fibre: 1e-3,
        base: 2e-3,
        boundary_fraction: 1.0 / 200.0,
    };
    /// Coarser steps for a spray that is differentiated again.
    pub const NESTED: SpraySteps = SpraySteps {
        fibre: 2e-3,
        base: 2e-3,
        boundary_fraction: 1.0 / 40.0,
    };
}

/// Base-point finite-difference step at `x`.
pub(crate) fn base_step<M: FinslerMetric + ?Sized>(metric: &M, x: Point2, nominal: f64, fraction: f64) -> f64 {
    let d = metric.boundary_distance(x);
    if d.is_finite() {
        nominal.min(d * fraction)
    } else {
        nominal
    }
}

/// `G^i = ¼ g^{il} ([F²]_{x^k ξ^l} ξ^k − [F²]_{x^l})` with every derivative
/// taken by fourth-order central differences.
pub fn spray_numeric<M: FinslerMetric + ?Sized>(metric: &M, x: Point2, xi: Vec2) -> Result<SprayCoeffs> {
    spray_numeric_with(metric, x, xi, SpraySteps::DIRECT)
}

pub(crate) fn spray_numeric_with<M: FinslerMetric + ?Sized>(
    metric: &M,
    x: Point2,
    xi: Vec2,
    steps: SpraySteps,
) -> Result<SprayCoeffs> {
    let len = xi.norm();
    if len == 0.0 {
        return Err(GeomError::ZeroVector);
    }
    if !metric.in_domain(x) {
        return Err(GeomError::out_of_domain(x, metric.name()));
    }
    let hv = steps.fibre * len;
    let hx = base_step(metric, x, steps.base, steps.boundary_fraction);
    let g = fundamental_tensor_with(metric, x, xi, hv, Stencil::Fourth)?.g;
    let g_inv = g.inverse().ok_or(GeomError::SingularTensor { det: g.det() })?;

    let f2 = |p: Point2, v: Vec2| {
        let f = metric.eval_unchecked(p, v);
        f * f
    };
    let dir = xi * (1.0 / len);
    let mut rhs = Vec2::ZERO;
    let mut comps = [0.0; 2];
    for (l, c) in comps.iter_mut().enumerate() {
        let e = Vec2::basis(l);
        // ξ^k ∂_{x^k} ∂_{ξ^l} F² as a mixed derivative along (ξ/|ξ|, e_l)
        let transport = diff::mixed(|s, t| f2(x + dir * s, xi + e * t), hx, hv, Stencil::Fourth) * len;
        let grad = diff::d1(|s| f2(x + e * s, xi), hx, Stencil::Fourth);
        *c = transport - grad;
    }
    rhs += Vec2::new(comps[0], comps[1]);
    Ok(g_inv * rhs * 0.25)
}

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Completed,
    LeftDomain,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Completed => "completed",
            Termination::LeftDomain => "left_domain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicSample {
    pub t: f64,
    pub x: Point2,
    pub v: Vec2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTrace {
    pub samples: Vec<GeodesicSample>,
    pub terminated: Termination,
}

/// Fixed-step RK4 settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicOptions {
    pub t_end: f64,
    pub step: f64,
    /// Integration stops once `boundary_distance(x)` drops below this.
    pub boundary_margin: f64,
}

impl Default for GeodesicOptions {
    fn default() -> Self {
        GeodesicOptions {
            t_end: 1.0,
            step: 1e-3,
            boundary_margin: 1e-9,
        }
    }
}

/// Integrates `ẍ + 2G(x, ẋ) = 0` from `(x0, v0)` with classic RK4.
pub fn integrate_geodesic<M: FinslerMetric + ?Sized>(
    metric: &M,
    x0: Point2,
    v0: Vec2,
    opts: &GeodesicOptions,
) -> Result<GeodesicTrace> {
    if v0.norm() == 0.0 {
        return Err(GeomError::ZeroVector);
    }
    if !metric.in_domain(x0) {
        return Err(GeomError::out_of_domain(x0, metric.name()));
    }
    if !(opts.step > 0.0 && opts.t_end >= 0.0) {
        return Err(GeomError::InvalidInput(format!(
            "step must be positive and t_end non-negative (step={}, t_end={})",
            opts.step, opts.t_end
        )));
    }
    let inside = |p: Point2| metric.in_domain(p) && metric.boundary_distance(p) >= opts.boundary_margin;
    let rhs = |p: Point2, v: Vec2| -> Option<(Vec2, Vec2)> {
        if !inside(p) {
            return None;
        }
        metric.spray(p, v).ok().map(|g| (v, g * -2.0))
    };

    let n_steps = (opts.t_end / opts.step).ceil() as usize;
    let mut samples = Vec::with_capacity(n_steps + 1);
    let (mut x, mut v, mut t) = (x0, v0, 0.0);
    samples.push(GeodesicSample { t, x, v });
    let mut terminated = Termination::Completed;
    for _ in 0..n_steps {
        let h = opts.step.min(opts.t_end - t);
        if h <= 0.0 {
            break;
        }
        let step = (|| {
            let (k1x, k1v) = rhs(x, v)?;
            let (k2x, k2v) = rhs(x + k1x * (0.5 * h), v + k1v * (0.5 * h))?;
            let (k3x, k3v) = rhs(x + k2x * (0.5 * h), v + k2v * (0.5 * h))?;
            let (k4x, k4v) = rhs(x + k3x * h, v + k3v * h)?;
            let nx = x + (k1x + k2x * 2.0 + k3x * 2.0 + k4x) * (h / 6.0);
            let nv = v + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
            inside(nx).then_some((nx, nv))
        })();
        match step {
            Some((nx, nv)) => {
                x = nx;
                v = nv;
                t += h;
                samples.push(GeodesicSample { t, x, v });
            }
            None => {
                terminated = Termination::LeftDomain;
                break;
            }
        }
    }
    Ok(GeodesicTrace { samples, terminated })
}

impl GeodesicTrace {
    /// Euclidean arc length of the polyline through the samples.
    pub fn arc_length(&self) -> f64 {
        self.samples.windows(2).map(|w| (w[1].x - w[0].x).norm()).sum()
    }

    /// Max perpendicular distance of the samples from the line through the
    /// first sample along the initial velocity, divided by arc length.
    pub fn collinearity_residual(&self) -> f64 {
        let Some(first) = self.samples.first() else {
            return 0.0;
        };
        let arc = self.arc_length();
        if arc == 0.0 {
            return 0.0;
        }
        let dir = first.v * (1.0 / first.v.norm());
        let worst = self
            .samples
            .iter()
            .map(|s| dir.cross(s.x - first.x).abs())
            .fold(0.0, f64::max);
        worst / arc
    }

    /// `max |F(x, v) − F(x0, v0)| / F(x0, v0)` along the trace.
    pub fn speed_drift<M: FinslerMetric + ?Sized>(&self, metric: &M) -> f64 {
        let Some(first) = self.samples.first() else {
            return 0.0;
        };
        let f0 = metric.eval_unchecked(first.x, first.v);
        self.samples
            .iter()
            .map(|s| (metric.eval_unchecked(s.x, s.v) - f0).abs() / f0)
            .fold(0.0, f64::max)
    }
}

/// A curve for [`curve_length`].
pub enum Path<'a> {
    /// Equally spaced samples `σ(t0 + k·dt)`; tangents by finite differences.
    Sampled { points: &'a [Point2], dt: f64 },
    /// A parametric curve with its analytic tangent.
    Parametric {
        position: &'a dyn Fn(f64) -> Point2,
        tangent: &'a dyn Fn(f64) -> Vec2,
        t0: f64,
        t1: f64,
    },
    /// Straight legs between consecutive vertices.
    Polyline(&'a [Point2]),
}

/// Relative tolerance of the interval-doubling loop on parametric paths.
const LENGTH_RTOL: f64 = 1e-12;
const MAX_DOUBLINGS: u32 = 18;

/// Finsler length `∫ F(σ, σ̇) dt` by composite Simpson quadrature.
///
/// For parametric curves and polylines the number of intervals is doubled
/// until two successive Simpson sums agree to about 1e-12 relative.
pub fn curve_length<M: FinslerMetric + ?Sized>(metric: &M, path: &Path<'_>) -> Result<f64> {
    match path {
        Path::Sampled { points, dt } => sampled_length(metric, points, *dt),
        Path::Parametric {
            position,
            tangent,
            t0,
            t1,
        } => parametric_length(metric, *position, *tangent, *t0, *t1),
        Path::Polyline(vertices) => {
            let mut total = 0.0;
            for leg in vertices.windows(2) {
                total += segment_length(metric, leg[0], leg[1])?;
            }
            Ok(total)
        }
    }
}

/// Length of the straight segment from `x` to `y`.
pub fn segment_length<M: FinslerMetric + ?Sized>(metric: &M, x: Point2, y: Point2) -> Result<f64> {
    let d = y - x;
    let pos = move |t: f64| x + d * t;
    let tan = move |_t: f64| d;
    parametric_length(metric, &pos, &tan, 0.0, 1.0)
}

fn simpson_sum(f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * k as f64);
    }
    acc * h / 3.0
}

fn parametric_length<M: FinslerMetric + ?Sized>(
    metric: &M,
    position: &dyn Fn(f64) -> Point2,
    tangent: &dyn Fn(f64) -> Vec2,
    t0: f64,
    t1: f64,
) -> Result<f64> {
    if t0 == t1 {
        let p = position(t0);
        return if metric.in_domain(p) {
            Ok(0.0)
        } else {
            Err(GeomError::out_of_domain(p, metric.name()))
        };
    }
    let mut first_bad = None;
    let integrand = |t: f64| {
        let p = position(t);
        if !metric.in_domain(p) {
            return f64::NAN;
        }
        metric.eval_unchecked(p, tangent(t))
    };
    let mut n = 16;
    let mut prev = simpson_sum(&integrand, t0, t1, n);
    for _ in 0..MAX_DOUBLINGS {
        if !prev.is_finite() {
            break;
        }
        n *= 2;
        let next = simpson_sum(&integrand, t0, t1, n);
        if (next - prev).abs() <= LENGTH_RTOL * next.abs() {
            return Ok(next);
        }
        prev = next;
    }
    if !prev.is_finite() {
        // locate a sample outside the domain for the error message
        for k in 0..=n {
            let p = position(t0 + (t1 - t0) * k as f64 / n as f64);
            if !metric.in_domain(p) {
                first_bad = Some(p);
                break;
            }
        }
        let p = first_bad.unwrap_or(position(t0));
        return Err(GeomError::out_of_domain(p, metric.name()));
    }
    Ok(prev)
}

fn sampled_length<M: FinslerMetric + ?Sized>(metric: &M, points: &[Point2], dt: f64) -> Result<f64> {
    if let Some(p) = points.iter().find(|p| !metric.in_domain(**p)) {
        return Err(GeomError::out_of_domain(*p, metric.name()));
    }
    let n = points.len();
    if n < 2 {
        return Ok(0.0);
    }
    if dt.is_nan() || dt <= 0.0 {
        return Err(GeomError::InvalidInput(format!(
            "sample spacing must be positive, got {dt}"
        )));
    }
    let tangent = |k: usize| -> Vec2 {
        if n == 2 {
            (points[1] - points[0]) * (1.0 / dt)
        } else if k == 0 {
            (points[1] * 4.0 - points[0] * 3.0 - points[2]) * (0.5 / dt)
        } else if k == n - 1 {
            (points[n - 1] * 3.0 - points[n - 2] * 4.0 + points[n - 3]) * (0.5 / dt)
        } else {
            (points[k + 1] - points[k - 1]) * (0.5 / dt)
        }
    };
    let vals: Vec<f64> = (0..n).map(|k| metric.eval_unchecked(points[k], tangent(k))).collect();
    let intervals = n - 1;
    if intervals == 1 {
        return Ok(0.5 * dt * (vals[0] + vals[1]));
    }
    // Simpson on an even number of intervals, 3/8 rule on a trailing triple
    let simpson_end = if intervals.is_multiple_of(2) {
        intervals
    } else {
        intervals - 3
    };
    let mut total = 0.0;
    for k in (0..simpson_end).step_by(2) {
        total += dt / 3.0 * (vals[k] + 4.0 * vals[k + 1] + vals[k + 2]);
    }
    if simpson_end < intervals {
        let k = simpson_end;
        total += 3.0 * dt / 8.0 * (vals[k] + 3.0 * vals[k + 1] + 3.0 * vals[k + 2] + vals[k + 3]);
    }
    Ok(total)
}
