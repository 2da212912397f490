//! Funk and Hilbert geometry of a Euclidean disc.
//!
//! The Funk metric of a convex domain measures how far a point can travel
//! along a ray before leaving the domain; its arithmetic symmetrization is
//! the Hilbert metric. For a disc everything reduces to one quadratic: the
//! parameter `t > 0` where `x + tξ` meets the circle.

use crate::error::{GeomError, Result};
use crate::finsler::FinslerMetric;
use crate::linalg::{Point2, Vec2};

/// Points closer than this to the circle are treated as outside.
pub const BOUNDARY_MARGIN: f64 = 1e-9;

/// Points closer than this are treated as equal by the distance functions.
pub const COINCIDENCE_TOL: f64 = 1e-14;

/// The open Euclidean disc `D_E(center, radius)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanDisc {
    pub radius: f64,
    pub center: Point2,
}

impl EuclideanDisc {
    pub fn new(radius: f64) -> Result<Self> {
        Self::with_center(radius, Point2::ZERO)
    }

    pub fn with_center(radius: f64, center: Point2) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.is_finite() {
            return Err(GeomError::InvalidInput(format!(
                "disc radius must be positive and finite, got {radius}"
            )));
        }
        Ok(EuclideanDisc { radius, center })
    }

    pub fn unit() -> Self {
        EuclideanDisc {
            radius: 1.0,
            center: Point2::ZERO,
        }
    }

    /// `r − |x − c|`; negative outside.
    pub fn boundary_distance(&self, x: Point2) -> f64 {
        self.radius - (x - self.center).norm()
    }

    pub fn contains(&self, x: Point2) -> bool {
        x.is_finite() && self.boundary_distance(x) >= BOUNDARY_MARGIN
    }

    pub(crate) fn check(&self, x: Point2) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GeomError::out_of_domain(x, self.describe()))
        }
    }

    fn describe(&self) -> String {
        format!("disc(center=({}, {}), r={})", self.center.x, self.center.y, self.radius)
    }

    /// The positive root `t` of `|x + tξ − c| = r`. Caller guarantees `x`
    /// interior and `ξ ≠ 0`.
    fn exit_parameter(&self, x: Point2, xi: Vec2) -> f64 {
        let p = x - self.center;
        let gap = (self.radius - p.norm()) * (self.radius + p.norm());
        let px = p.dot(xi);
        let root = (px * px + xi.norm_sq() * gap).sqrt();
        // pick the cancellation-free form of the same root
        if px > 0.0 {
            gap / (px + root)
        } else {
            (root - px) / xi.norm_sq()
        }
    }
}

/// The point where the ray `x + tξ`, `t > 0`, leaves the disc.
pub fn ray_boundary_hit(disc: &EuclideanDisc, x: Point2, xi: Vec2) -> Result<Point2> {
    if xi.norm() == 0.0 {
        return Err(GeomError::ZeroVector);
    }
    disc.check(x)?;
    Ok(x + xi * disc.exit_parameter(x, xi))
}

/// Funk–Finsler norm of the disc:
/// `[√((r²−|p|²)|ξ|² + ⟨p,ξ⟩²) + ⟨p,ξ⟩] / (r²−|p|²)` with `p = x − c`.
pub fn funk_finsler_disc(disc: &EuclideanDisc, x: Point2, xi: Vec2) -> Result<f64> {
    disc.check(x)?;
    Ok(disc_funk_norm(disc, x, xi))
}

/// `1/t` for the exit parameter `t`, which is the same quantity as `α + β`
/// without the cancellation when `⟨p, ξ⟩ < 0`.
fn disc_funk_norm(disc: &EuclideanDisc, x: Point2, xi: Vec2) -> f64 {
    if xi.norm_sq() == 0.0 {
        return 0.0;
    }
    1.0 / disc.exit_parameter(x, xi)
}

fn disc_randers_split(disc: &EuclideanDisc, x: Point2, xi: Vec2) -> (f64, f64) {
    let p = x - disc.center;
    let gap = (disc.radius - p.norm()) * (disc.radius + p.norm());
    let px = p.dot(xi);
    let alpha = (gap * xi.norm_sq() + px * px).sqrt() / gap;
    (alpha, px / gap)
}

/// `log(|x − m| / |y − m|)` where `m` is the exit point of the ray from `x`
/// through `y`.
pub fn funk_distance_disc(disc: &EuclideanDisc, x: Point2, y: Point2) -> Result<f64> {
    disc.check(x)?;
    disc.check(y)?;
    let d = y - x;
    if d.norm() < COINCIDENCE_TOL {
        return Ok(0.0);
    }
    // |x − m| = t|d|, |y − m| = (t − 1)|d|
    let t = disc.exit_parameter(x, d);
    Ok(-(-1.0 / t).ln_1p())
}

/// Hilbert distance: half the log of the cross-ratio of `x`, `y` and the two
/// boundary points on their chord.
pub fn hilbert_distance_disc(disc: &EuclideanDisc, x: Point2, y: Point2) -> Result<f64> {
    disc.check(x)?;
    disc.check(y)?;
    let d = y - x;
    if d.norm() < COINCIDENCE_TOL {
        return Ok(0.0);
    }
    // a = x + t_a d beyond y, b = x − t_b d behind x:
    // |x−a||y−b| / (|y−a||x−b|) = t_a (1 + t_b) / ((t_a − 1) t_b)
    let t_a = disc.exit_parameter(x, d);
    let t_b = disc.exit_parameter(x, -d);
    Ok(0.5 * (-(-1.0 / t_a).ln_1p() + (1.0 / t_b).ln_1p()))
}

/// The Funk–Finsler metric of a disc as a [`FinslerMetric`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscFunk {
    pub disc: EuclideanDisc,
}

impl DiscFunk {
    pub fn new(disc: EuclideanDisc) -> Self {
        DiscFunk { disc }
    }
}

impl FinslerMetric for DiscFunk {
    fn name(&self) -> &str {
        "disc-funk"
    }
    fn in_domain(&self, x: Point2) -> bool {
        self.disc.contains(x)
    }
    fn eval_unchecked(&self, x: Point2, xi: Vec2) -> f64 {
        disc_funk_norm(&self.disc, x, xi)
    }
    fn boundary_distance(&self, x: Point2) -> f64 {
        self.disc.boundary_distance(x)
    }
    fn randers_split(&self, x: Point2, xi: Vec2) -> Option<(f64, f64)> {
        Some(disc_randers_split(&self.disc, x, xi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn radial_hits() {
        let d = EuclideanDisc::unit();
        assert_eq!(
            ray_boundary_hit(&d, Vec2::ZERO, Vec2::new(1.0, 0.0)).unwrap(),
            Vec2::new(1.0, 0.0)
        );
        let m = ray_boundary_hit(&d, Vec2::new(0.5, 0.0), Vec2::new(-1.0, 0.0)).unwrap();
        assert!(close(m.x, -1.0, 1e-15) && m.y == 0.0);
    }

    #[test]
    fn oblique_hit_lies_on_circle() {
        let r = 1.0_f64.tanh();
        let d = EuclideanDisc::new(r).unwrap();
        let x = Vec2::new(0.3, 0.2);
        let m = ray_boundary_hit(&d, x, Vec2::new(1.0, 1.0)).unwrap();
        assert!(close(m.norm(), r, 1e-12));
        // forward along (1,1)
        assert!((m - x).x > 0.0 && close((m - x).x, (m - x).y, 1e-12));
    }

    #[test]
    fn hit_errors() {
        let d = EuclideanDisc::unit();
        assert_eq!(ray_boundary_hit(&d, Vec2::ZERO, Vec2::ZERO), Err(GeomError::ZeroVector));
        assert!(matches!(
            ray_boundary_hit(&d, Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0)),
            Err(GeomError::OutOfDomain { .. })
        ));
        // inside the margin band
        assert!(ray_boundary_hit(&d, Vec2::new(1.0 - 1e-10, 0.0), Vec2::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn funk_norm_examples() {
        let d = EuclideanDisc::unit();
        let xi = Vec2::new(0.3, -0.4);
        assert!(close(funk_finsler_disc(&d, Vec2::ZERO, xi).unwrap(), 0.5, 1e-15));
        let r = 1.7;
        let t = 0.6;
        let dr = EuclideanDisc::new(r).unwrap();
        let v = funk_finsler_disc(&dr, Vec2::new(t, 0.0), Vec2::new(1.0, 0.0)).unwrap();
        assert!(close(v, 1.0 / (r - t), 1e-14));
    }

    #[test]
    fn funk_norm_defining_inclusion() {
        let r = 1.0_f64.tanh();
        let d = EuclideanDisc::new(r).unwrap();
        let x = Vec2::new(0.3, 0.2);
        let xi = Vec2::new(0.4, -0.1);
        let v = funk_finsler_disc(&d, x, xi).unwrap();
        assert!(close((x + xi * (1.0 / v)).norm(), r, 1e-12));
    }

    #[test]
    fn distance_examples() {
        let d = EuclideanDisc::unit();
        let p = Vec2::new(0.5, 0.0);
        assert_eq!(funk_distance_disc(&d, p, p).unwrap(), 0.0);
        assert!(close(
            funk_distance_disc(&d, Vec2::ZERO, p).unwrap(),
            2.0_f64.ln(),
            1e-15
        ));
        assert!(close(
            funk_distance_disc(&d, p, Vec2::ZERO).unwrap(),
            1.5_f64.ln(),
            1e-15
        ));
        assert_eq!(hilbert_distance_disc(&d, p, p).unwrap(), 0.0);
        for t in [0.1, 0.5, 0.9, 0.999] {
            let h = hilbert_distance_disc(&d, Vec2::ZERO, Vec2::new(t, 0.0)).unwrap();
            assert!(close(h, f64::atanh(t), 1e-12), "{t}: {h}");
        }
    }

    #[test]
    fn off_center_disc() {
        let d = EuclideanDisc::with_center(2.0, Vec2::new(1.0, 1.0)).unwrap();
        let m = ray_boundary_hit(&d, Vec2::new(1.0, 1.0), Vec2::new(0.0, 3.0)).unwrap();
        assert!(close(m.x, 1.0, 1e-15) && close(m.y, 3.0, 1e-15));
        assert!(close(
            funk_distance_disc(&d, Vec2::new(1.0, 1.0), Vec2::new(1.0, 2.0)).unwrap(),
            2.0_f64.ln(),
            1e-14
        ));
    }

    #[test]
    fn invalid_disc() {
        assert!(EuclideanDisc::new(0.0).is_err());
        assert!(EuclideanDisc::new(f64::NAN).is_err());
    }
}
