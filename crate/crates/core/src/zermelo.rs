//! Zermelo navigation data `(h, W)` of the Funk metric and the inverse
//! solve back to a Randers norm.
//!
//! A Randers metric `α + β` is the time-optimal metric for travel on a
//! Riemannian sea `h` pushed by a wind `W` with `‖W‖_h < 1`:
//! `h_ij = ε(a_ij − b_i b_j)`, `W^i = −b^i/ε`, `ε = 1 − ‖β‖²_α`.

use crate::error::{GeomError, Result};
use crate::klein::{self, klein_radius};
use crate::linalg::{Mat2, Point2, Vec2};

/// Winds with `‖W‖_h` at or above `1 − WIND_MARGIN` are rejected.
pub const WIND_MARGIN: f64 = 1e-12;

/// Sea metric, wind and `ε = 1 − ‖β‖²_α` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NavigationData {
    pub h: Mat2,
    pub w: Vec2,
    pub eps: f64,
}

impl NavigationData {
    /// Navigation data from an arbitrary sea metric and wind; `ε` is set to
    /// `1 − ‖W‖²_h`.
    pub fn new(h: Mat2, w: Vec2) -> Result<Self> {
        if !h.is_finite() || !w.is_finite() || !h.is_spd() {
            return Err(GeomError::InvalidInput(
                "sea metric must be symmetric positive definite".into(),
            ));
        }
        let nav = NavigationData {
            h,
            w,
            eps: 1.0 - h.quad(w),
        };
        nav.check_wind()?;
        Ok(nav)
    }

    /// `‖W‖²_h = h_ij W^i W^j`.
    pub fn wind_norm_sq(&self) -> f64 {
        self.h.quad(self.w)
    }

    fn check_wind(&self) -> Result<()> {
        let norm = self.wind_norm_sq().sqrt();
        if norm.is_finite() && norm < 1.0 - WIND_MARGIN {
            Ok(())
        } else {
            Err(GeomError::DegenerateWind { norm })
        }
    }
}

/// `ε = (r² − |x|²)(1 − r²|x|²)/(r²(1 − |x|²)²)`.
pub fn epsilon(x: Point2) -> Result<f64> {
    klein::randers_data_at(x)?;
    let r2 = klein_radius().powi(2);
    let s = x.norm_sq();
    Ok((r2 - s) * (1.0 - r2 * s) / (r2 * (1.0 - s).powi(2)))
}

/// Navigation data of the Funk metric:
/// `h_ij = (1 − r²|x|²)/(r²(1 − |x|²)⁴) · [δ_ij(1 − |x|²)² + x^i x^j(2 − r² − |x|²)]`,
/// `W = −(1 − r²)(1 − |x|²) x/(1 − r²|x|²)`.
pub fn to_navigation(x: Point2) -> Result<NavigationData> {
    let data = klein::randers_data_at(x)?;
    let r2 = klein_radius().powi(2);
    let s = x.norm_sq();
    let eps = (r2 - s) * (1.0 - r2 * s) / (r2 * (1.0 - s).powi(2));
    let k = (1.0 - r2 * s) / (r2 * (1.0 - s).powi(4));
    let h = (Mat2::IDENTITY * (1.0 - s).powi(2) + x.outer(x) * (2.0 - r2 - s)) * k;
    let w = x * (-(1.0 - r2) * (1.0 - s) / (1.0 - r2 * s));
    debug_assert!({
        let general = (data.a - data.b.outer(data.b)) * eps;
        (general - h).max_abs() <= 1e-10 * h.max_abs()
    });
    debug_assert!({
        let general = data.b_raised() * (-1.0 / eps);
        (general - w).max_abs() <= 1e-10 * (1.0 + w.max_abs())
    });
    Ok(NavigationData { h, w, eps })
}

/// The Randers norm of the navigation data: the positive `F` with
/// `‖ξ/F − W‖_h = 1`,
/// `F = [√(λ h(ξ,ξ) + h(W,ξ)²) − h(W,ξ)]/λ`, `λ = 1 − ‖W‖²_h`.
pub fn from_navigation(nav: &NavigationData, xi: Vec2) -> Result<f64> {
    nav.check_wind()?;
    let hh = nav.h.quad(xi);
    if hh == 0.0 {
        return Ok(0.0);
    }
    let hw = nav.h.bilinear(nav.w, xi);
    let lambda = 1.0 - nav.wind_norm_sq();
    let root = (lambda * hh + hw * hw).sqrt();
    // both forms are the same root; pick the one without cancellation
    Ok(if hw > 0.0 {
        hh / (root + hw)
    } else {
        (root - hw) / lambda
    })
}

/// `‖W‖²_h` as it is commonly printed for the Funk metric,
/// `|x|²(1 − r²)²/(r²(r² − |x|²)²)`.
pub fn wind_norm_sq_printed(x: Point2) -> Result<f64> {
    klein::randers_data_at(x)?;
    let r2 = klein_radius().powi(2);
    let s = x.norm_sq();
    Ok(s * (1.0 - r2).powi(2) / (r2 * (r2 - s).powi(2)))
}
