//! The Funk–Finsler metric of the Klein unit disc.
//!
//! The hyperbolic unit disc about the origin in the Klein model is the
//! Euclidean disc of radius `r = tanh 1`. Its Funk metric is of Randers type,
//! `F = α_F + β_F`, with `α_F` the Klein metric of that disc and `β_F` the
//! exact 1-form `d f`, `f = ½ log((1 − |x|²)/(r² − |x|²))`.

use crate::disc::{self, EuclideanDisc, BOUNDARY_MARGIN, COINCIDENCE_TOL};
use crate::error::{GeomError, Result};
use crate::finsler::{FinslerMetric, RandersData};
use crate::linalg::{Mat2, Point2, Vec2};

/// Euclidean radius of the Klein unit disc.
pub fn klein_radius() -> f64 {
    1.0_f64.tanh()
}

/// The Euclidean disc `|x| < tanh 1` on which the Funk metric lives.
pub fn klein_unit_disc() -> EuclideanDisc {
    EuclideanDisc {
        radius: klein_radius(),
        center: Point2::ZERO,
    }
}

fn check_in(radius: f64, x: Point2, what: &str) -> Result<()> {
    if x.is_finite() && radius - x.norm() >= BOUNDARY_MARGIN {
        Ok(())
    } else {
        Err(GeomError::out_of_domain(x, what))
    }
}

fn check_klein_unit(x: Point2) -> Result<()> {
    check_in(klein_radius(), x, "klein unit disc |x| < tanh 1")
}

/// Klein (Hilbert) distance on the Euclidean unit disc.
pub fn klein_distance(x: Point2, y: Point2) -> Result<f64> {
    check_in(1.0, x, "unit disc")?;
    check_in(1.0, y, "unit disc")?;
    disc::hilbert_distance_disc(&EuclideanDisc::unit(), x, y)
}

/// Riemannian Klein norm on the Euclidean unit disc:
/// `√((1 − |x|²)|ξ|² + ⟨x,ξ⟩²) / (1 − |x|²)`.
pub fn klein_norm(x: Point2, xi: Vec2) -> Result<f64> {
    check_in(1.0, x, "unit disc")?;
    Ok(KleinNorm::unit().eval_unchecked(x, xi))
}

/// `(α_F, β_F)` at `(x, ξ)`, without domain checks.
fn funk_parts(x: Point2, xi: Vec2) -> (f64, f64) {
    let r = klein_radius();
    let s = x.norm_sq();
    let gap = r * r - s;
    let xx = x.dot(xi);
    let alpha = (gap * xi.norm_sq() + xx * xx).sqrt() / gap;
    let beta = (1.0 - r * r) * xx / (gap * (1.0 - s));
    (alpha, beta)
}

/// `α_F + β_F`. For `β_F < 0` the sum is evaluated as
/// `(α² − β²)/(α − β)`, whose numerator has the cancellation-free form
/// `[|ξ|²(1−|x|²)² + ⟨x,ξ⟩²(2 − r² − |x|²)] / ((r²−|x|²)(1−|x|²)²)`.
fn funk_value(x: Point2, xi: Vec2) -> f64 {
    let (a, b) = funk_parts(x, xi);
    if b >= 0.0 {
        return a + b;
    }
    let r2 = klein_radius().powi(2);
    let s = x.norm_sq();
    let xx = x.dot(xi);
    let diff_sq = (xi.norm_sq() * (1.0 - s).powi(2) + xx * xx * (2.0 - r2 - s)) / ((r2 - s) * (1.0 - s).powi(2));
    diff_sq / (a - b)
}

/// `F(x, ξ) = α_F + β_F`. Accepts `ξ = 0` (returns 0).
pub fn funk_metric(x: Point2, xi: Vec2) -> Result<f64> {
    check_klein_unit(x)?;
    Ok(funk_value(x, xi))
}

/// `coth(d_K(x, a)) · ‖ξ‖_K`, `a` the exit point of the ray from `x`
/// along `ξ` through the circle of radius `tanh 1`.
pub fn funk_metric_cothdef(x: Point2, xi: Vec2) -> Result<f64> {
    if xi.norm() == 0.0 {
        return Err(GeomError::ZeroVector);
    }
    check_klein_unit(x)?;
    let a = disc::ray_boundary_hit(&klein_unit_disc(), x, xi)?;
    let d = klein_distance(x, a)?;
    Ok(klein_norm(x, xi)? / d.tanh())
}

/// Pointwise Randers data of the Funk metric, every field from its own
/// closed form.
pub fn randers_data_at(x: Point2) -> Result<RandersData> {
    check_klein_unit(x)?;
    let r2 = klein_radius().powi(2);
    let s = x.norm_sq();
    let gap = r2 - s;
    let xy = x.x * x.y;
    let a = Mat2::new(gap + x.x * x.x, xy, xy, gap + x.y * x.y) * (1.0 / (gap * gap));
    let a_inv = Mat2::new(gap + x.y * x.y, -xy, -xy, gap + x.x * x.x) * (gap / r2);
    let b = x * ((1.0 - r2) / (gap * (1.0 - s)));
    let beta_norm_sq = s * (1.0 - r2).powi(2) / (r2 * (1.0 - s).powi(2));
    Ok(RandersData {
        a,
        a_inv,
        b,
        beta_norm_sq,
    })
}

/// `det a_ij = r² / (r² − |x|²)³`.
pub fn randers_det(x: Point2) -> Result<f64> {
    check_klein_unit(x)?;
    let r2 = klein_radius().powi(2);
    Ok(r2 / (r2 - x.norm_sq()).powi(3))
}

/// The potential `f` with `β_F = df`.
pub fn potential(x: Point2) -> Result<f64> {
    check_klein_unit(x)?;
    let r2 = klein_radius().powi(2);
    let s = x.norm_sq();
    Ok(0.5 * ((1.0 - s) / (r2 - s)).ln())
}

/// Funk distance of the Klein unit disc,
/// `log(sinh d_K(x, a) / sinh d_K(y, a))`, `a` the exit point of the ray
/// from `x` through `y`.
pub fn funk_distance(x: Point2, y: Point2) -> Result<f64> {
    check_klein_unit(x)?;
    check_klein_unit(y)?;
    let d = y - x;
    if d.norm() < COINCIDENCE_TOL {
        return Ok(0.0);
    }
    let a = disc::ray_boundary_hit(&klein_unit_disc(), x, d)?;
    let dx = klein_distance(x, a)?;
    let dy = klein_distance(y, a)?;
    Ok((dx.sinh() / dy.sinh()).ln().max(0.0))
}

/// Spray of the Funk metric:
/// `G^i = ξ^i/(r²−|x|²) · (⟨x,ξ⟩ + (1−r²)[(1−|x|²)|ξ|² + 2⟨x,ξ⟩²] / (2F(1−|x|²)²))`.
pub fn funk_spray(x: Point2, xi: Vec2) -> Result<Vec2> {
    if xi.norm() == 0.0 {
        return Err(GeomError::ZeroVector);
    }
    check_klein_unit(x)?;
    Ok(funk_spray_unchecked(x, xi))
}

fn funk_spray_unchecked(x: Point2, xi: Vec2) -> Vec2 {
    let r2 = klein_radius().powi(2);
    let s = x.norm_sq();
    let xx = x.dot(xi);
    let f = funk_value(x, xi);
    let p = (1.0 - r2) * ((1.0 - s) * xi.norm_sq() + 2.0 * xx * xx) / (2.0 * f * (1.0 - s).powi(2));
    xi * ((xx + p) / (r2 - s))
}

/// The Funk–Finsler metric of the Klein unit disc as a [`FinslerMetric`],
/// with its closed-form spray.
#[derive(Debug, Clone, Copy, Default)]
pub struct KleinFunk;

impl FinslerMetric for KleinFunk {
    fn name(&self) -> &str {
        "klein-funk"
    }
    fn in_domain(&self, x: Point2) -> bool {
        check_klein_unit(x).is_ok()
    }
    fn eval_unchecked(&self, x: Point2, xi: Vec2) -> f64 {
        funk_value(x, xi)
    }
    fn boundary_distance(&self, x: Point2) -> f64 {
        klein_radius() - x.norm()
    }
    fn randers_split(&self, x: Point2, xi: Vec2) -> Option<(f64, f64)> {
        Some(funk_parts(x, xi))
    }
    fn spray(&self, x: Point2, xi: Vec2) -> Result<Vec2> {
        funk_spray(x, xi)
    }
}

/// Riemannian Klein (Hilbert) metric of the disc of radius `R` about the
/// origin: `√((R²−|x|²)|ξ|² + ⟨x,ξ⟩²)/(R²−|x|²)`. Curvature −1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinNorm {
    pub radius: f64,
}

impl KleinNorm {
    pub fn unit() -> Self {
        KleinNorm { radius: 1.0 }
    }

    /// `α_F`, the Riemannian part of the Funk metric.
    pub fn funk_alpha() -> Self {
        KleinNorm { radius: klein_radius() }
    }
}

impl FinslerMetric for KleinNorm {
    fn name(&self) -> &str {
        if self.radius == 1.0 {
            "klein"
        } else {
            "klein-alpha"
        }
    }
    fn in_domain(&self, x: Point2) -> bool {
        check_in(self.radius, x, "").is_ok()
    }
    fn eval_unchecked(&self, x: Point2, xi: Vec2) -> f64 {
        let gap = self.radius * self.radius - x.norm_sq();
        let xx = x.dot(xi);
        (gap * xi.norm_sq() + xx * xx).sqrt() / gap
    }
    fn boundary_distance(&self, x: Point2) -> f64 {
        self.radius - x.norm()
    }
    fn randers_split(&self, x: Point2, xi: Vec2) -> Option<(f64, f64)> {
        Some((self.eval_unchecked(x, xi), 0.0))
    }
    /// `G^i = ξ^i ⟨x,ξ⟩ / (R² − |x|²)`.
    fn spray(&self, x: Point2, xi: Vec2) -> Result<Vec2> {
        if !self.in_domain(x) {
            return Err(GeomError::out_of_domain(x, self.name()));
        }
        Ok(xi * (x.dot(xi) / (self.radius * self.radius - x.norm_sq())))
    }
}
