//! Fixed-size vectors and matrices for the plane and for the ambient
//! three-space used by the pullback realizations.
//!
//! Matrices are dense and row-major. Everything is `Copy`.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

/// A point of the plane or a tangent vector at one.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

/// Alias used where the value is a base point rather than a tangent vector.
pub type Point2 = Vec2;

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Unit basis vector `e_i` (`i` in `0..2`).
    pub fn basis(i: usize) -> Self {
        match i {
            0 => Vec2::new(1.0, 0.0),
            1 => Vec2::new(0.0, 1.0),
            _ => panic!("basis index {i} out of range for dimension 2"),
        }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn outer(self, other: Vec2) -> Mat2 {
        Mat2::new(self.x * other.x, self.x * other.y, self.y * other.x, self.y * other.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x, self.y]
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl Index<usize> for Vec2 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            _ => panic!("index {i} out of range for Vec2"),
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

/// A point or vector of the ambient space R³.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Dense 2×2 matrix, row-major: `[[a11, a12], [a21, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2 {
    pub m: [[f64; 2]; 2],
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        m: [[1.0, 0.0], [0.0, 1.0]],
    };
    pub const ZERO: Mat2 = Mat2 {
        m: [[0.0, 0.0], [0.0, 0.0]],
    };

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2 {
            m: [[a11, a12], [a21, a22]],
        }
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> f64) -> Self {
        Mat2::new(f(0, 0), f(0, 1), f(1, 0), f(1, 1))
    }

    pub fn from_cols(c0: Vec2, c1: Vec2) -> Self {
        Mat2::new(c0.x, c1.x, c0.y, c1.y)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn symmetrized(&self) -> Mat2 {
        let off = 0.5 * (self.m[0][1] + self.m[1][0]);
        Mat2::new(self.m[0][0], off, off, self.m[1][1])
    }

    /// Inverse, or `None` when `|det|` is below `tiny` times the squared
    /// entry scale.
    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        let scale = self.max_abs();
        if !d.is_finite() || d.abs() <= 1e-300 || d.abs() <= 1e-14 * scale * scale {
            return None;
        }
        Some(Mat2::new(
            self.m[1][1] / d,
            -self.m[0][1] / d,
            -self.m[1][0] / d,
            self.m[0][0] / d,
        ))
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn sym_eigenvalues(&self) -> (f64, f64) {
        let s = self.symmetrized();
        let mean = 0.5 * s.trace();
        let half_diff = 0.5 * (s.m[0][0] - s.m[1][1]);
        let rad = half_diff.hypot(s.m[0][1]);
        (mean - rad, mean + rad)
    }

    pub fn is_spd(&self) -> bool {
        self.sym_eigenvalues().0 > 0.0
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, v: Vec2, w: Vec2) -> f64 {
        v.dot(*self * w)
    }

    pub fn quad(&self, v: Vec2) -> f64 {
        self.bilinear(v, v)
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|v| v.is_finite())
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::from_fn(|i, j| self.m[i][j] + o.m[i][j])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::from_fn(|i, j| self.m[i][j] - o.m[i][j])
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        Mat2::from_fn(|i, j| self.m[i][j] * s)
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::from_fn(|i, j| self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j])
    }
}

/// Dense 3×2 matrix: the Jacobian of a map from the plane into R³.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat32 {
    pub m: [[f64; 2]; 3],
}

impl Mat32 {
    pub fn from_cols(c0: Vec3, c1: Vec3) -> Self {
        Mat32 {
            m: [[c0.x, c1.x], [c0.y, c1.y], [c0.z, c1.z]],
        }
    }

    pub fn max_abs_diff(&self, o: &Mat32) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - o.m[i][j]).abs());
            }
        }
        worst
    }
}

impl Mul<Vec2> for Mat32 {
    type Output = Vec3;
    fn mul(self, v: Vec2) -> Vec3 {
        Vec3::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
            self.m[2][0] * v.x + self.m[2][1] * v.y,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a = Mat2::new(2.0, 0.5, 0.5, 3.0);
        let prod = a * a.inverse().unwrap();
        assert!((prod - Mat2::IDENTITY).max_abs() < 1e-15);
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(Mat2::new(1.0, 2.0, 2.0, 4.0).inverse().is_none());
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let (lo, hi) = Mat2::new(3.0, 0.0, 0.0, -1.0).sym_eigenvalues();
        assert_eq!((lo, hi), (-1.0, 3.0));
        assert!(!Mat2::new(3.0, 0.0, 0.0, -1.0).is_spd());
    }

    #[test]
    fn eigenvalues_match_trace_and_det() {
        let a = Mat2::new(2.0, 0.7, 0.7, 1.0);
        let (lo, hi) = a.sym_eigenvalues();
        assert!((lo + hi - a.trace()).abs() < 1e-14);
        assert!((lo * hi - a.det()).abs() < 1e-14);
    }
}
