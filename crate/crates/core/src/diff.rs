//! Central finite-difference stencils.
//!
//! Two families are provided: the classic second-order stencils (3-point
//! first derivative, 9-point 3×3 Hessian) and fourth-order 5-point stencils.
//! The second-order family is what [`crate::finsler::fundamental_tensor`]
//! uses; the numeric curvature oracles nest derivatives several levels deep
//! and need the fourth-order family to keep the roundoff floor low.

use std::ops::{Add, Mul, Sub};

use crate::linalg::{Mat2, Vec2};

/// Values that finite differences can be taken of.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> Linear for T where T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

/// Stencil order selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    /// 3-point first derivative, 9-point (3×3) Hessian.
    Second,
    /// 5-point first and second derivatives, 16-point mixed partials.
    Fourth,
}

/// `d/ds f(s)` at `s = 0`.
pub fn d1<V: Linear>(f: impl Fn(f64) -> V, h: f64, stencil: Stencil) -> V {
    match stencil {
        Stencil::Second => (f(h) - f(-h)) * (0.5 / h),
        Stencil::Fourth => {
            let near = f(h) - f(-h);
            let far = f(2.0 * h) - f(-2.0 * h);
            (near * 8.0 - far) * (1.0 / (12.0 * h))
        }
    }
}

/// `d²/ds² f(s)` at `s = 0`.
pub fn d2<V: Linear>(f: impl Fn(f64) -> V, h: f64, stencil: Stencil) -> V {
    let c = f(0.0);
    match stencil {
        Stencil::Second => (f(h) + f(-h) - c * 2.0) * (1.0 / (h * h)),
        Stencil::Fourth => {
            let near = f(h) + f(-h);
            let far = f(2.0 * h) + f(-2.0 * h);
            (near * 16.0 - far - c * 30.0) * (1.0 / (12.0 * h * h))
        }
    }
}

/// `∂²/∂s∂t f(s, t)` at the origin, steps `hs` and `ht`.
pub fn mixed<V: Linear>(f: impl Fn(f64, f64) -> V, hs: f64, ht: f64, stencil: Stencil) -> V {
    match stencil {
        Stencil::Second => (f(hs, ht) - f(hs, -ht) - f(-hs, ht) + f(-hs, -ht)) * (0.25 / (hs * ht)),
        Stencil::Fourth => d1(|s| d1(|t| f(s, t), ht, Stencil::Fourth), hs, Stencil::Fourth),
    }
}

/// Gradient of a scalar field.
pub fn gradient(f: impl Fn(Vec2) -> f64, p: Vec2, h: f64, stencil: Stencil) -> Vec2 {
    Vec2::new(
        d1(|s| f(p + Vec2::new(s, 0.0)), h, stencil),
        d1(|s| f(p + Vec2::new(0.0, s)), h, stencil),
    )
}

/// Jacobian `∂f^i/∂p^j` of a planar vector field.
pub fn jacobian(f: impl Fn(Vec2) -> Vec2, p: Vec2, h: f64, stencil: Stencil) -> Mat2 {
    let c0 = d1(|s| f(p + Vec2::new(s, 0.0)), h, stencil);
    let c1 = d1(|s| f(p + Vec2::new(0.0, s)), h, stencil);
    Mat2::from_cols(c0, c1)
}

/// Hessian of a scalar field. With [`Stencil::Second`] this is the 9-point
/// 3×3 stencil.
pub fn hessian(f: impl Fn(Vec2) -> f64, p: Vec2, h: f64, stencil: Stencil) -> Mat2 {
    let at = |s: f64, t: f64| f(p + Vec2::new(s, t));
    let hxx = d2(|s| at(s, 0.0), h, stencil);
    let hyy = d2(|t| at(0.0, t), h, stencil);
    let hxy = mixed(at, h, h, stencil);
    Mat2::new(hxx, hxy, hxy, hyy)
}
