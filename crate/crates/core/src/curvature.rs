//! Curvature of the Funk metric: covariant data of `β`, S-curvature,
//! Riemann curvature `R^i_k`, Ricci and flag curvature, each in closed form,
//! plus generic finite-difference oracles built on the numeric spray.

use std::cell::RefCell;

use crate::diff::{self, Stencil};
use crate::error::{GeomError, Result};
use crate::finsler::{bh_density, FinslerMetric};
use crate::geodesic::{base_step, spray_numeric_with, SpraySteps};
use crate::klein::{self, klein_radius, KleinFunk};
use crate::linalg::{Mat2, Point2, Vec2};

/// Christoffel symbols of `α_F` and the covariant derivative of `β_F` at a
/// point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovariantData {
    /// `gamma[k][i][j] = Γ̄^k_ij`.
    pub gamma: [[[f64; 2]; 2]; 2],
    /// `db[(i, j)] = b_{i|j}`.
    pub db: Mat2,
}

impl CovariantData {
    /// `s_ij = ½(b_{i|j} − b_{j|i})`.
    pub fn s(&self) -> Mat2 {
        (self.db - self.db.transpose()) * 0.5
    }

    /// `r_ij = ½(b_{i|j} + b_{j|i})`.
    pub fn r(&self) -> Mat2 {
        self.db.symmetrized()
    }

    /// `e_00 = e_ij ξ^i ξ^j`; with `s_ij = 0` this is `r_ij ξ^i ξ^j`.
    pub fn e00(&self, b: Vec2, b_raised: Vec2, xi: Vec2) -> f64 {
        let s = self.s();
        // s_j = b^i s_ij
        let s_low = Vec2::new(
            b_raised.x * s.get(0, 0) + b_raised.y * s.get(1, 0),
            b_raised.x * s.get(0, 1) + b_raised.y * s.get(1, 1),
        );
        self.r().quad(xi) + 2.0 * b.dot(xi) * s_low.dot(xi)
    }
}

fn check(x: Point2) -> Result<()> {
    klein::randers_data_at(x).map(|_| ())
}

fn check_xi(xi: Vec2) -> Result<()> {
    if xi.norm() == 0.0 {
        Err(GeomError::ZeroVector)
    } else {
        Ok(())
    }
}

/// `Γ̄^k_ij = (x^i δ_kj + x^j δ_ki)/(r² − |x|²)` and
/// `b_{i|j} = ∂b_i/∂x^j − b_k Γ̄^k_ij`, the derivative of `b` taken
/// analytically.
pub fn covariant_data(x: Point2) -> Result<CovariantData> {
    check(x)?;
    let r2 = klein_radius().powi(2);
    let c = 1.0 - r2;
    let s = x.norm_sq();
    let gap = r2 - s;
    let xv = x.to_array();
    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    let mut gamma = [[[0.0; 2]; 2]; 2];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for (i, row) in gk.iter_mut().enumerate() {
            for (j, g) in row.iter_mut().enumerate() {
                *g = (xv[i] * delta(k, j) + xv[j] * delta(k, i)) / gap;
            }
        }
    }
    // b_i = c x^i h(s), h = 1/((r² − s)(1 − s))
    let h = 1.0 / (gap * (1.0 - s));
    let dh = h * (1.0 / gap + 1.0 / (1.0 - s));
    let b = [c * xv[0] * h, c * xv[1] * h];
    let db = Mat2::from_fn(|i, j| {
        let d_b = c * (delta(i, j) * h + 2.0 * xv[i] * xv[j] * dh);
        let corr: f64 = (0..2).map(|k| b[k] * gamma[k][i][j]).sum();
        d_b - corr
    });
    Ok(CovariantData { gamma, db })
}

/// `b_{i|j} = (1−r²)/((r²−|x|²)(1−|x|²)) · [δ_ij + 2x^i x^j/(1−|x|²)]`.
pub fn db_closed(x: Point2) -> Result<Mat2> {
    check(x)?;
    let r2 = klein_radius().powi(2);
    let s = x.norm_sq();
    let k = (1.0 - r2) / ((r2 - s) * (1.0 - s));
    Ok((Mat2::IDENTITY + x.outer(x) * (2.0 / (1.0 - s))) * k)
}

/// Douglas and Berwald flags of the Funk metric at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub douglas: bool,
    pub berwald: bool,
}

/// Threshold on `max |s_ij|` and `max |b_{i|j}|`.
pub const CLASSIFY_TOL: f64 = 1e-10;

pub fn classify(x: Point2) -> Result<Classification> {
    let cd = covariant_data(x)?;
    Ok(Classification {
        douglas: cd.s().max_abs() <= CLASSIFY_TOL,
        berwald: cd.db.max_abs() <= CLASSIFY_TOL,
    })
}

struct Pointwise {
    r2: f64,
    c: f64,
    s: f64,
    gap: f64,
    xx: f64,
    n2: f64,
    f: f64,
}

fn pointwise(x: Point2, xi: Vec2) -> Pointwise {
    let r2 = klein_radius().powi(2);
    let s = x.norm_sq();
    Pointwise {
        r2,
        c: 1.0 - r2,
        s,
        gap: r2 - s,
        xx: x.dot(xi),
        n2: xi.norm_sq(),
        f: KleinFunk.eval_unchecked(x, xi),
    }
}

/// S-curvature in closed form,
/// `S = 3(1−r²)[(1−|x|²)|ξ|² + 2⟨x,ξ⟩²]/(2F(r²−|x|²)(1−|x|²)²)
///    + 3⟨x,ξ⟩(1−r²)²(1+|x|²)/((r²−|x|²)(1−r²|x|²)(1−|x|²))`.
pub fn s_curvature_closed(x: Point2, xi: Vec2) -> Result<f64> {
    check_xi(xi)?;
    check(x)?;
    let (first, second) = s_terms(x, xi);
    Ok(first + second)
}

/// The S-curvature formula with the sign of its second term flipped, as
/// it appears in print. Differs from [`s_curvature_closed`] off the
/// origin.
pub fn s_curvature_printed(x: Point2, xi: Vec2) -> Result<f64> {
    check_xi(xi)?;
    check(x)?;
    let (first, second) = s_terms(x, xi);
    Ok(first - second)
}

fn s_terms(x: Point2, xi: Vec2) -> (f64, f64) {
    let p = pointwise(x, xi);
    let first = 3.0 * p.c * ((1.0 - p.s) * p.n2 + 2.0 * p.xx * p.xx) / (2.0 * p.f * p.gap * (1.0 - p.s).powi(2));
    let second = 3.0 * p.xx * p.c * p.c * (1.0 + p.s) / (p.gap * (1.0 - p.r2 * p.s) * (1.0 - p.s));
    (first, second)
}

/// Closed-form curvature quantities at `(x, ξ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureReport {
    pub f: f64,
    pub s: f64,
    /// `r[(i, k)] = R^i_k`.
    pub r: Mat2,
    pub ric: f64,
    pub k: f64,
    pub phi: f64,
    pub psi: f64,
    pub tau: Vec2,
}

/// `φ = b_{i|j}ξ^iξ^j`, `ψ = b_{i|j|k}ξ^iξ^jξ^k` and `τ_k` in closed form.
fn phi_psi_tau(p: &Pointwise, x: Point2, xi: Vec2) -> (f64, f64, Vec2) {
    let phi = p.c * ((1.0 - p.s) * p.n2 + 2.0 * p.xx * p.xx) / (p.gap * (1.0 - p.s).powi(2));
    let psi = 2.0 * p.c * p.xx / ((1.0 - p.s).powi(3) * p.gap.powi(2))
        * ((1.0 - p.s) * p.n2 * (3.0 * p.r2 - 2.0 * p.s - 1.0) - 2.0 * p.xx * p.xx * (1.0 + p.s - 2.0 * p.r2));
    let tau = (x * p.n2 - xi * p.xx) * (p.c / (p.f * p.gap.powi(2) * (1.0 - p.s)));
    (phi, psi, tau)
}

fn assemble(x: Point2, xi: Vec2, with_beta: bool) -> CurvatureReport {
    let p = pointwise(x, xi);
    let data = klein::randers_data_at(x).expect("domain checked by caller");
    let alpha = data.alpha(xi);
    // (α)_k = a_kj ξ^j / α, F_k = (α)_k + b_k
    let alpha_k = (data.a * xi) * (1.0 / alpha);
    let (phi, psi, tau, f, f_k) = if with_beta {
        let (phi, psi, tau) = phi_psi_tau(&p, x, xi);
        (phi, psi, tau, p.f, alpha_k + data.b)
    } else {
        (0.0, 0.0, Vec2::ZERO, alpha, alpha_k)
    };
    let xi_term = 3.0 * (phi / (2.0 * f)).powi(2) - psi / (2.0 * f);
    let r = Mat2::from_fn(|i, k| {
        let d = if i == k { 1.0 } else { 0.0 };
        -(d * alpha * alpha - alpha * alpha_k[k] * xi[i]) + xi_term * (d - f_k[k] * xi[i] / f) + tau[k] * xi[i]
    });
    let ric = xi_term - alpha * alpha;
    let s = if with_beta {
        let (a, b) = s_terms(x, xi);
        a + b
    } else {
        0.0
    };
    CurvatureReport {
        f,
        s,
        r,
        ric,
        k: ric / (f * f),
        phi,
        psi,
        tau,
    }
}

/// Riemann, Ricci and flag curvature of the Funk metric:
/// `R^i_k = −(δ^i_k α² − α α_k ξ^i) + Ξ(δ^i_k − F_k ξ^i/F) + τ_k ξ^i`,
/// `Ξ = 3(φ/2F)² − ψ/2F`, `Ric = Ξ − α²`, `K = Ric/F²`.
pub fn riemann_closed(x: Point2, xi: Vec2) -> Result<CurvatureReport> {
    check_xi(xi)?;
    check(x)?;
    Ok(assemble(x, xi, true))
}

/// [`riemann_closed`] with `β` set to zero: the curvature of the Klein
/// metric `α_F` alone, `K = −1`.
pub fn riemann_closed_alpha(x: Point2, xi: Vec2) -> Result<CurvatureReport> {
    check_xi(xi)?;
    check(x)?;
    Ok(assemble(x, xi, false))
}

/// `K(0, ξ) = −(1 − ¾(1 − r²)²)`.
pub fn flag_curvature_origin() -> f64 {
    let c = 1.0 - klein_radius().powi(2);
    -(1.0 - 0.75 * c * c)
}

/// Flag curvature for a tangential flag at `|x| = a`:
/// `−(1 − ¾((1 − r²)/(1 − a²))²)`.
pub fn flag_curvature_tangential(a: f64) -> f64 {
    let c = 1.0 - klein_radius().powi(2);
    -(1.0 - 0.75 * (c / (1.0 - a * a)).powi(2))
}

/// Remembers the first error raised inside a finite-difference closure.
#[derive(Default)]
struct FirstError(RefCell<Option<GeomError>>);

impl FirstError {
    fn catch<T>(&self, r: Result<T>, fallback: T) -> T {
        r.unwrap_or_else(|e| {
            self.0.borrow_mut().get_or_insert(e);
            fallback
        })
    }

    fn finish(self) -> Result<()> {
        self.0.into_inner().map_or(Ok(()), Err)
    }
}

/// Outer finite-difference step for derivatives of the numeric spray.
const ORACLE_STEP: f64 = 1e-2;

fn oracle_steps<M: FinslerMetric + ?Sized>(metric: &M, x: Point2, xi: Vec2) -> (f64, f64) {
    // leave room for the inner stencil of spray_numeric
    (
        base_step(metric, x, ORACLE_STEP, SpraySteps::NESTED.boundary_fraction) * 0.5,
        ORACLE_STEP * xi.norm(),
    )
}

/// `S = ∂G^m/∂ξ^m − ξ^m ∂(ln σ)/∂x^m` with `G` from [`spray_numeric`] and
/// every derivative by fourth-order central differences.
pub fn s_curvature_numeric<M, D>(metric: &M, density: D, x: Point2, xi: Vec2) -> Result<f64>
where
    M: FinslerMetric + ?Sized,
    D: Fn(Point2) -> Result<f64>,
{
    check_xi(xi)?;
    if !metric.in_domain(x) {
        return Err(GeomError::out_of_domain(x, metric.name()));
    }
    let (hx, hv) = oracle_steps(metric, x, xi);
    let failure = FirstError::default();
    let div: f64 = (0..2)
        .map(|m| {
            let e = Vec2::basis(m);
            diff::d1(
                |t| {
                    failure.catch(
                        spray_numeric_with(metric, x, xi + e * t, SpraySteps::NESTED).map(|g| g[m]),
                        f64::NAN,
                    )
                },
                hv,
                Stencil::Fourth,
            )
        })
        .sum();
    let len = xi.norm();
    let dir = xi * (1.0 / len);
    let transport = diff::d1(
        |s| failure.catch(density(x + dir * s).map(f64::ln), f64::NAN),
        hx,
        Stencil::Fourth,
    ) * len;
    failure.finish()?;
    Ok(div - transport)
}

/// Busemann–Hausdorff density of the Funk metric.
pub fn funk_density(x: Point2) -> Result<f64> {
    Ok(bh_density(&klein::randers_data_at(x)?))
}

/// `√det a` of the Klein metric on `D_E(1)`, `(1 − |x|²)^{-3/2}`.
pub fn klein_density(x: Point2) -> Result<f64> {
    if x.is_finite() && x.norm() < 1.0 {
        Ok((1.0 - x.norm_sq()).powf(-1.5))
    } else {
        Err(GeomError::out_of_domain(x, "unit disc"))
    }
}

/// `R^i_k = 2∂G^i/∂x^k − ξ^j ∂²G^i/∂x^j∂ξ^k + 2G^j ∂²G^i/∂ξ^j∂ξ^k
///          − ∂G^i/∂ξ^j ∂G^j/∂ξ^k` with `G` from [`spray_numeric`].
pub fn riemann_numeric<M: FinslerMetric + ?Sized>(metric: &M, x: Point2, xi: Vec2) -> Result<Mat2> {
    check_xi(xi)?;
    if !metric.in_domain(x) {
        return Err(GeomError::out_of_domain(x, metric.name()));
    }
    let (hx, hv) = oracle_steps(metric, x, xi);
    let failure = FirstError::default();
    let g = |p: Point2, v: Vec2| {
        failure.catch(
            spray_numeric_with(metric, p, v, SpraySteps::NESTED),
            Vec2::new(f64::NAN, f64::NAN),
        )
    };
    let g0 = g(x, xi);
    let len = xi.norm();
    let dir = xi * (1.0 / len);
    let e = [Vec2::basis(0), Vec2::basis(1)];

    // columns indexed by k
    let dgx: [Vec2; 2] = [0, 1].map(|k| diff::d1(|s| g(x + e[k] * s, xi), hx, Stencil::Fourth));
    let dgv: [Vec2; 2] = [0, 1].map(|k| diff::d1(|t| g(x, xi + e[k] * t), hv, Stencil::Fourth));
    // ξ^j ∂²G/∂x^j∂ξ^k, as a mixed derivative along ξ/|ξ|
    let transport: [Vec2; 2] =
        [0, 1].map(|k| diff::mixed(|s, t| g(x + dir * s, xi + e[k] * t), hx, hv, Stencil::Fourth) * len);
    // ∂²G/∂ξ^j∂ξ^k
    let hess = |j: usize, k: usize| -> Vec2 {
        if j == k {
            diff::d2(|t| g(x, xi + e[j] * t), hv, Stencil::Fourth)
        } else {
            diff::mixed(|s, t| g(x, xi + e[j] * s + e[k] * t), hv, hv, Stencil::Fourth)
        }
    };
    let h00 = hess(0, 0);
    let h01 = hess(0, 1);
    let h11 = hess(1, 1);
    let hv_jk = |j: usize, k: usize| match (j, k) {
        (0, 0) => h00,
        (1, 1) => h11,
        _ => h01,
    };
    failure.finish()?;
    Ok(Mat2::from_fn(|i, k| {
        let mut v = 2.0 * dgx[k][i] - transport[k][i];
        for j in 0..2 {
            v += 2.0 * g0[j] * hv_jk(j, k)[i];
            v -= dgv[j][i] * dgv[k][j];
        }
        v
    }))
}
