//! Generic Finsler metrics and the numeric machinery shared by every
//! concrete metric in the crate: the fundamental tensor, a homogeneity
//! probe, and the Randers helpers (evaluation and Busemann–Hausdorff
//! density).

use std::fmt;
use std::sync::Arc;

use crate::diff::{self, Stencil};
use crate::error::{GeomError, Result};
use crate::linalg::{Mat2, Point2, Vec2};

/// A Finsler metric on an open subset of the plane.
///
/// Implementors provide the unchecked evaluation and the domain predicate.
/// Everything else has a default: [`FinslerMetric::eval`] checks the domain,
/// [`FinslerMetric::spray`] falls back to the numeric spray.
pub trait FinslerMetric: Send + Sync {
    fn name(&self) -> &str;

    fn in_domain(&self, x: Point2) -> bool;

    /// `F(x, ξ)` without the domain check.
    fn eval_unchecked(&self, x: Point2, xi: Vec2) -> f64;

    /// Euclidean distance from `x` to the edge of the domain, when known.
    /// Used to keep finite-difference stencils inside the domain.
    fn boundary_distance(&self, _x: Point2) -> f64 {
        f64::INFINITY
    }

    /// `(α, β)` for metrics of Randers type.
    fn randers_split(&self, _x: Point2, _xi: Vec2) -> Option<(f64, f64)> {
        None
    }

    fn eval(&self, x: Point2, xi: Vec2) -> Result<f64> {
        if !self.in_domain(x) {
            return Err(GeomError::out_of_domain(x, self.name()));
        }
        Ok(self.eval_unchecked(x, xi))
    }

    /// Spray coefficients `G^i(x, ξ)`.
    fn spray(&self, x: Point2, xi: Vec2) -> Result<Vec2> {
        crate::geodesic::spray_numeric(self, x, xi)
    }
}

impl<M: FinslerMetric + ?Sized> FinslerMetric for &M {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn in_domain(&self, x: Point2) -> bool {
        (**self).in_domain(x)
    }
    fn eval_unchecked(&self, x: Point2, xi: Vec2) -> f64 {
        (**self).eval_unchecked(x, xi)
    }
    fn boundary_distance(&self, x: Point2) -> f64 {
        (**self).boundary_distance(x)
    }
    fn randers_split(&self, x: Point2, xi: Vec2) -> Option<(f64, f64)> {
        (**self).randers_split(x, xi)
    }
    fn spray(&self, x: Point2, xi: Vec2) -> Result<Vec2> {
        (**self).spray(x, xi)
    }
}

type EvalFn = dyn Fn(Point2, Vec2) -> f64 + Send + Sync;
type DomainFn = dyn Fn(Point2) -> bool + Send + Sync;

/// A metric assembled from closures. Pullbacks and test fixtures are built
/// this way.
#[derive(Clone)]
pub struct MetricField {
    name: String,
    eval: Arc<EvalFn>,
    domain: Arc<DomainFn>,
}

impl MetricField {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(Point2, Vec2) -> f64 + Send + Sync + 'static,
        domain: impl Fn(Point2) -> bool + Send + Sync + 'static,
    ) -> Self {
        MetricField {
            name: name.into(),
            eval: Arc::new(eval),
            domain: Arc::new(domain),
        }
    }

    /// Wraps any metric, keeping only evaluation and domain. The result
    /// always uses the numeric spray.
    pub fn from_metric<M: FinslerMetric + Clone + 'static>(metric: M) -> Self {
        let dom = metric.clone();
        MetricField::new(
            metric.name().to_string(),
            move |x, xi| metric.eval_unchecked(x, xi),
            move |x| dom.in_domain(x),
        )
    }
}

impl fmt::Debug for MetricField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricField").field("name", &self.name).finish()
    }
}

impl FinslerMetric for MetricField {
    fn name(&self) -> &str {
        &self.name
    }
    fn in_domain(&self, x: Point2) -> bool {
        (self.domain)(x)
    }
    fn eval_unchecked(&self, x: Point2, xi: Vec2) -> f64 {
        (self.eval)(x, xi)
    }
}

/// The Euclidean norm on the whole plane.
#[derive(Debug, Clone, Copy, Default)]
pub struct Euclidean;

impl FinslerMetric for Euclidean {
    fn name(&self) -> &str {
        "euclidean"
    }
    fn in_domain(&self, x: Point2) -> bool {
        x.is_finite()
    }
    fn eval_unchecked(&self, _x: Point2, xi: Vec2) -> f64 {
        xi.norm()
    }
    fn randers_split(&self, _x: Point2, xi: Vec2) -> Option<(f64, f64)> {
        Some((xi.norm(), 0.0))
    }
    fn spray(&self, _x: Point2, _xi: Vec2) -> Result<Vec2> {
        Ok(Vec2::ZERO)
    }
}

/// Pointwise data of a Randers metric `F = √(a_ij ξ^i ξ^j) + b_i ξ^i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandersData {
    pub a: Mat2,
    pub a_inv: Mat2,
    pub b: Vec2,
    /// `‖β‖²_α = a^ij b_i b_j`
    pub beta_norm_sq: f64,
}

impl RandersData {
    /// Builds the data from `a` and `b`, inverting `a` and computing
    /// `‖β‖²_α`. Fails unless `a` is SPD and `‖β‖_α < 1`.
    pub fn new(a: Mat2, b: Vec2) -> Result<Self> {
        if !a.is_spd() {
            return Err(GeomError::InvalidInput(
                "Randers matrix a is not positive definite".into(),
            ));
        }
        let a_inv = a.inverse().ok_or(GeomError::SingularTensor { det: a.det() })?;
        let beta_norm_sq = a_inv.quad(b);
        if beta_norm_sq >= 1.0 {
            return Err(GeomError::InvalidInput(format!(
                "‖β‖²_α = {beta_norm_sq} is not below 1"
            )));
        }
        Ok(RandersData {
            a,
            a_inv,
            b,
            beta_norm_sq,
        })
    }

    /// `b^i = a^ij b_j`
    pub fn b_raised(&self) -> Vec2 {
        self.a_inv * self.b
    }

    pub fn alpha(&self, xi: Vec2) -> f64 {
        self.a.quad(xi).max(0.0).sqrt()
    }

    pub fn beta(&self, xi: Vec2) -> f64 {
        self.b.dot(xi)
    }
}

/// `F(ξ) = √(ξᵀ a ξ) + b·ξ`.
pub fn randers_eval(data: &RandersData, xi: Vec2) -> f64 {
    data.alpha(xi) + data.beta(xi)
}

/// Busemann–Hausdorff volume density of a Randers metric in dimension 2:
/// `(1 − ‖β‖²_α)^{3/2} √det a`.
pub fn bh_density(data: &RandersData) -> f64 {
    const N: f64 = 2.0;
    (1.0 - data.beta_norm_sq).powf(0.5 * (N + 1.0)) * data.a.det().sqrt()
}

/// Busemann–Hausdorff density of any metric, `π / area{ξ : F(x, ξ) < 1}`,
/// with the area `½∮ F(x, θ)^{-2} dθ` by the trapezoid rule. Nodes are
/// doubled until the area settles to about 1e-14 relative.
pub fn bh_density_numeric<M: FinslerMetric + ?Sized>(metric: &M, x: Point2) -> Result<f64> {
    if !metric.in_domain(x) {
        return Err(GeomError::out_of_domain(x, metric.name()));
    }
    let area = |n: usize| -> f64 {
        let step = std::f64::consts::TAU / n as f64;
        let sum: f64 = (0..n)
            .map(|k| {
                let (s, c) = (k as f64 * step).sin_cos();
                metric.eval_unchecked(x, Vec2::new(c, s)).powi(-2)
            })
            .sum();
        0.5 * sum * step
    };
    let mut n = 64;
    let mut prev = area(n);
    while n < 1 << 16 {
        n *= 2;
        let next = area(n);
        if (next - prev).abs() <= 1e-14 * next {
            prev = next;
            break;
        }
        prev = next;
    }
    if prev.is_finite() && prev > 0.0 {
        Ok(std::f64::consts::PI / prev)
    } else {
        Err(GeomError::InvalidInput(format!("indicatrix area at {x:?} is {prev}")))
    }
}

/// The Hessian of `½F²` in the fibre variable at a fixed `(x, ξ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalTensor {
    pub g: Mat2,
    /// `false` when an eigenvalue of `g` is not positive.
    pub spd: bool,
}

/// Default fibre step: `max(1e-4, 1e-4·|ξ|)`.
pub fn default_fibre_step(xi: Vec2) -> f64 {
    1e-4_f64.max(1e-4 * xi.norm())
}

/// `g_ij(x, ξ)` by the 9-point central stencil on `½F²` with the default
/// step.
pub fn fundamental_tensor<M: FinslerMetric + ?Sized>(metric: &M, x: Point2, xi: Vec2) -> Result<FundamentalTensor> {
    fundamental_tensor_with(metric, x, xi, default_fibre_step(xi), Stencil::Second)
}

/// `g_ij(x, ξ)` with an explicit step and stencil.
pub fn fundamental_tensor_with<M: FinslerMetric + ?Sized>(
    metric: &M,
    x: Point2,
    xi: Vec2,
    step: f64,
    stencil: Stencil,
) -> Result<FundamentalTensor> {
    if xi.norm() == 0.0 {
        return Err(GeomError::ZeroVector);
    }
    if !metric.in_domain(x) {
        return Err(GeomError::out_of_domain(x, metric.name()));
    }
    let half_sq = |v: Vec2| {
        let f = metric.eval_unchecked(x, v);
        0.5 * f * f
    };
    let g = diff::hessian(half_sq, xi, step, stencil).symmetrized();
    Ok(FundamentalTensor { g, spd: g.is_spd() })
}

/// `max_λ |F(x, λξ) − λF(x, ξ)| / (λF(x, ξ))`.
pub fn check_homogeneity<M: FinslerMetric + ?Sized>(metric: &M, x: Point2, xi: Vec2, lambdas: &[f64]) -> Result<f64> {
    if xi.norm() == 0.0 {
        return Err(GeomError::ZeroVector);
    }
    let base = metric.eval(x, xi)?;
    Ok(lambdas
        .iter()
        .map(|&l| {
            let scaled = metric.eval_unchecked(x, xi * l);
            (scaled - l * base).abs() / (l * base)
        })
        .fold(0.0, f64::max))
}
