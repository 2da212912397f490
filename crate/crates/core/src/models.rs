//! Model maps between the hyperbolic-plane models, pullbacks of Finsler
//! metrics along them, and the Funk structure written in each model.
//!
//! Five maps are provided:
//!
//! | map | from | to |
//! |-----|------|----|
//! | `f` | Poincaré disc | Klein disc, `2x/(1+|x|²)` |
//! | `g` | Klein unit disc `D_E(1)` | upper half-plane |
//! | `g⁻¹` | upper half-plane | Klein unit disc |
//! | `η` | `D_E(r)` | upper sheet of the hyperboloid `x₃² = 1 + x₁² + x₂²` |
//! | `Ψ` | `D_E(r)` | upper hemisphere of radius `r` |
//!
//! The Funk metric in the Poincaré disc and in the upper half-plane is
//! *defined* as the pullback of [`crate::klein::funk_metric`]; the closed
//! forms [`funk_poincare`] and [`funk_upper`] are checked against it.

use crate::error::{GeomError, Result};
use crate::finsler::FinslerMetric;
use crate::klein::{klein_radius, KleinFunk};
use crate::linalg::{Mat2, Mat32, Point2, Vec2, Vec3};

/// Image of a chart map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Image {
    Plane(Vec2),
    Space(Vec3),
}

/// Jacobian of a chart map, `dim_out × 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Jacobian {
    Plane(Mat2),
    Space(Mat32),
}

impl Jacobian {
    pub fn apply(&self, xi: Vec2) -> Image {
        match self {
            Jacobian::Plane(m) => Image::Plane(*m * xi),
            Jacobian::Space(m) => Image::Space(*m * xi),
        }
    }

    /// Largest entrywise difference; infinite when the shapes differ.
    pub fn max_abs_diff(&self, other: &Jacobian) -> f64 {
        match (self, other) {
            (Jacobian::Plane(a), Jacobian::Plane(b)) => (*a - *b).max_abs(),
            (Jacobian::Space(a), Jacobian::Space(b)) => a.max_abs_diff(b),
            _ => f64::INFINITY,
        }
    }
}

/// A smooth map from a planar domain into the plane or into R³.
#[derive(Clone, Copy)]
pub struct ChartMap {
    pub name: &'static str,
    pub dim_out: usize,
    eval: fn(Point2) -> Image,
    jacobian_closed: Option<fn(Point2) -> Jacobian>,
    domain: fn(Point2) -> bool,
    domain_label: &'static str,
}

impl std::fmt::Debug for ChartMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChartMap")
            .field("name", &self.name)
            .field("dim_out", &self.dim_out)
            .field("closed_jacobian", &self.jacobian_closed.is_some())
            .finish()
    }
}

/// Relative step of the numeric Jacobian.
const JACOBIAN_STEP: f64 = 1e-6;

fn within(x: Point2, radius: f64) -> bool {
    x.is_finite() && x.norm() < radius
}

impl ChartMap {
    /// Builds a map from function pointers.
    pub fn new(
        name: &'static str,
        dim_out: usize,
        eval: fn(Point2) -> Image,
        jacobian_closed: Option<fn(Point2) -> Jacobian>,
        domain: fn(Point2) -> bool,
    ) -> Self {
        ChartMap {
            name,
            dim_out,
            eval,
            jacobian_closed,
            domain,
            domain_label: name,
        }
    }

    pub fn in_domain(&self, x: Point2) -> bool {
        (self.domain)(x)
    }

    pub fn has_closed_jacobian(&self) -> bool {
        self.jacobian_closed.is_some()
    }

    fn check(&self, x: Point2) -> Result<()> {
        if self.in_domain(x) {
            Ok(())
        } else {
            Err(GeomError::out_of_domain(x, self.domain_label))
        }
    }

    /// `f(x) = 2x/(1 + |x|²)`, Poincaré disc to Klein disc.
    pub fn poincare_to_klein() -> Self {
        ChartMap {
            name: "f",
            dim_out: 2,
            eval: |x| Image::Plane(x * (2.0 / (1.0 + x.norm_sq()))),
            jacobian_closed: Some(|x| {
                let q = 1.0 + x.norm_sq();
                let c = 2.0 / (q * q);
                Jacobian::Plane(
                    Mat2::new(
                        q - 2.0 * x.x * x.x,
                        -2.0 * x.x * x.y,
                        -2.0 * x.x * x.y,
                        q - 2.0 * x.y * x.y,
                    ) * c,
                )
            }),
            domain: |x| within(x, 1.0),
            domain_label: "poincare disc |x| < 1",
        }
    }

    /// `g(x) = (2x²/(1 + x¹), 2√(1 − |x|²)/(1 + x¹))`, Klein disc to upper
    /// half-plane. No closed Jacobian; the numeric one is used.
    pub fn klein_to_upper() -> Self {
        ChartMap {
            name: "g",
            dim_out: 2,
            eval: |x| {
                let d = 1.0 + x.x;
                Image::Plane(Vec2::new(2.0 * x.y / d, 2.0 * (1.0 - x.norm_sq()).sqrt() / d))
            },
            jacobian_closed: None,
            domain: |x| within(x, 1.0),
            domain_label: "klein disc |x| < 1",
        }
    }

    /// `g⁻¹(x) = ((4 − |x|²)/(4 + |x|²), 4x¹/(4 + |x|²))`, upper half-plane to
    /// Klein disc.
    pub fn upper_to_klein() -> Self {
        ChartMap {
            name: "g_inv",
            dim_out: 2,
            eval: |x| {
                let d = 4.0 + x.norm_sq();
                Image::Plane(Vec2::new((4.0 - x.norm_sq()) / d, 4.0 * x.x / d))
            },
            jacobian_closed: Some(|x| {
                let d = 4.0 + x.norm_sq();
                let c = 4.0 / (d * d);
                // rows: −4⟨x,·⟩ and (4+|x|²)e¹ − 2x¹⟨x,·⟩
                Jacobian::Plane(Mat2::new(-4.0 * x.x, -4.0 * x.y, d - 2.0 * x.x * x.x, -2.0 * x.x * x.y) * c)
            }),
            domain: |x| x.is_finite() && x.y > 0.0,
            domain_label: "upper half-plane x² > 0",
        }
    }

    /// `η(x) = (x, r)/√(r² − |x|²)` onto the upper sheet of the hyperboloid.
    pub fn hyperboloid() -> Self {
        ChartMap {
            name: "eta",
            dim_out: 3,
            eval: |x| {
                let r = klein_radius();
                let w = (r * r - x.norm_sq()).sqrt();
                Image::Space(Vec3::new(x.x / w, x.y / w, r / w))
            },
            jacobian_closed: Some(|x| {
                let r = klein_radius();
                let gap = r * r - x.norm_sq();
                let c = gap.powf(-1.5);
                let xy = x.x * x.y;
                Jacobian::Space(Mat32::from_cols(
                    Vec3::new(gap + x.x * x.x, xy, r * x.x) * c,
                    Vec3::new(xy, gap + x.y * x.y, r * x.y) * c,
                ))
            }),
            domain: |x| within(x, klein_radius()),
            domain_label: "klein unit disc |x| < tanh 1",
        }
    }

    /// `Ψ(x) = (x, √(r² − |x|²))` onto the upper hemisphere of radius `r`.
    pub fn hemisphere() -> Self {
        ChartMap {
            name: "psi",
            dim_out: 3,
            eval: |x| {
                let r = klein_radius();
                Image::Space(Vec3::new(x.x, x.y, (r * r - x.norm_sq()).sqrt()))
            },
            jacobian_closed: Some(|x| {
                let r = klein_radius();
                let w = (r * r - x.norm_sq()).sqrt();
                Jacobian::Space(Mat32::from_cols(
                    Vec3::new(1.0, 0.0, -x.x / w),
                    Vec3::new(0.0, 1.0, -x.y / w),
                ))
            }),
            domain: |x| within(x, klein_radius()),
            domain_label: "klein unit disc |x| < tanh 1",
        }
    }

    pub fn identity() -> Self {
        ChartMap {
            name: "id",
            dim_out: 2,
            eval: Image::Plane,
            jacobian_closed: Some(|_| Jacobian::Plane(Mat2::IDENTITY)),
            domain: |x| x.is_finite(),
            domain_label: "plane",
        }
    }

    /// Looks a map up by name: `f`, `g`, `g_inv`, `eta`, `psi`, `id`.
    pub fn by_name(name: &str) -> Option<Self> {
        Some(match name {
            "f" => Self::poincare_to_klein(),
            "g" => Self::klein_to_upper(),
            "g_inv" => Self::upper_to_klein(),
            "eta" => Self::hyperboloid(),
            "psi" => Self::hemisphere(),
            "id" => Self::identity(),
            _ => return None,
        })
    }

    /// Central-difference Jacobian, step `1e-6·(1 + |x|)`.
    pub fn numeric_jacobian(&self, x: Point2) -> Result<Jacobian> {
        self.check(x)?;
        let h = JACOBIAN_STEP * (1.0 + x.norm());
        let at = |p: Point2| (self.eval)(p);
        let col = |e: Vec2| match (at(x + e * h), at(x - e * h)) {
            (Image::Plane(a), Image::Plane(b)) => Image::Plane((a - b) * (0.5 / h)),
            (Image::Space(a), Image::Space(b)) => Image::Space((a - b) * (0.5 / h)),
            _ => unreachable!("chart map changed its codomain"),
        };
        Ok(match (col(Vec2::basis(0)), col(Vec2::basis(1))) {
            (Image::Plane(c0), Image::Plane(c1)) => Jacobian::Plane(Mat2::from_cols(c0, c1)),
            (Image::Space(c0), Image::Space(c1)) => Jacobian::Space(Mat32::from_cols(c0, c1)),
            _ => unreachable!("chart map changed its codomain"),
        })
    }

    /// Closed-form Jacobian when the map has one, numeric otherwise.
    pub fn jacobian(&self, x: Point2) -> Result<Jacobian> {
        match self.jacobian_closed {
            Some(j) => {
                self.check(x)?;
                Ok(j(x))
            }
            None => self.numeric_jacobian(x),
        }
    }

    /// The closed-form Jacobian, if any.
    pub fn jacobian_closed(&self, x: Point2) -> Option<Result<Jacobian>> {
        self.jacobian_closed.map(|j| self.check(x).map(|_| j(x)))
    }
}

/// Evaluates a chart map.
pub fn map_eval(map: &ChartMap, x: Point2) -> Result<Image> {
    map.check(x)?;
    Ok((map.eval)(x))
}

/// Signature of an ambient metric on R³.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    Riemannian,
    LorentzianRanders,
}

/// A Randers-type metric on an open subset of R³.
#[derive(Clone, Copy)]
pub struct AmbientMetric {
    pub name: &'static str,
    pub signature: Signature,
    eval: fn(Vec3, Vec3) -> Result<f64>,
    domain: fn(Vec3) -> bool,
}

impl std::fmt::Debug for AmbientMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AmbientMetric")
            .field("name", &self.name)
            .field("signature", &self.signature)
            .finish()
    }
}

impl AmbientMetric {
    /// `F_L = √(ξ₁² + ξ₂² − ξ₃²) + (1 − r²/(x₃² − r²(x₁² + x₂²))) ξ₃/x₃`
    /// on `x₃ > 0`, `x₃² > r²(x₁² + x₂²)`. Timelike vectors have no value.
    pub fn lorentz_randers() -> Self {
        AmbientMetric {
            name: "lorentz-randers",
            signature: Signature::LorentzianRanders,
            eval: |p, v| {
                let q = v.x * v.x + v.y * v.y - v.z * v.z;
                if q < 0.0 {
                    return Err(GeomError::LorentzSignature { value: q });
                }
                let r2 = klein_radius().powi(2);
                let cone = p.z * p.z - r2 * (p.x * p.x + p.y * p.y);
                Ok(q.sqrt() + (1.0 - r2 / cone) * v.z / p.z)
            },
            domain: |p| {
                let r2 = klein_radius().powi(2);
                p.z > 0.0 && p.z * p.z > r2 * (p.x * p.x + p.y * p.y)
            },
        }
    }

    /// `F_+ = |ξ|/x₃ + b ξ₃`, `b = (|x|² − 1)/(x₃(1 − x₁² − x₂²))`, on the
    /// part of the cylinder `x₁² + x₂² < 1, x₃ > 0` where `|b| x₃ < 1`,
    /// i.e. `2(x₁² + x₂²) + x₃² < 2`.
    pub fn hemisphere_randers() -> Self {
        AmbientMetric {
            name: "hemisphere-randers",
            signature: Signature::Riemannian,
            eval: |p, v| {
                let rho2 = p.x * p.x + p.y * p.y;
                let b = (p.dot(p) - 1.0) / (p.z * (1.0 - rho2));
                Ok(v.norm() / p.z + b * v.z)
            },
            domain: |p| {
                let rho2 = p.x * p.x + p.y * p.y;
                p.z > 0.0 && rho2 < 1.0 && 2.0 * rho2 + p.z * p.z < 2.0
            },
        }
    }

    pub fn in_domain(&self, p: Vec3) -> bool {
        p.x.is_finite() && p.y.is_finite() && p.z.is_finite() && (self.domain)(p)
    }

    pub fn eval(&self, p: Vec3, v: Vec3) -> Result<f64> {
        if !self.in_domain(p) {
            return Err(GeomError::out_of_domain(Vec2::new(p.x, p.y), self.name));
        }
        (self.eval)(p, v)
    }
}

/// The metric a chart map pulls back from.
#[derive(Clone, Copy)]
pub enum Ambient<'a> {
    Plane(&'a dyn FinslerMetric),
    Space(&'a AmbientMetric),
}

fn pullback_with(map: &ChartMap, ambient: Ambient<'_>, x: Point2, xi: Vec2, jac: Jacobian) -> Result<f64> {
    let y = map_eval(map, x)?;
    match (ambient, y, jac.apply(xi)) {
        (Ambient::Plane(m), Image::Plane(y), Image::Plane(v)) => {
            if !m.in_domain(y) {
                return Err(GeomError::out_of_domain(
                    x,
                    format!("preimage of {} under {}", m.name(), map.name),
                ));
            }
            Ok(m.eval_unchecked(y, v))
        }
        (Ambient::Space(m), Image::Space(y), Image::Space(v)) => {
            if !m.in_domain(y) {
                return Err(GeomError::out_of_domain(
                    x,
                    format!("preimage of {} under {}", m.name, map.name),
                ));
            }
            m.eval(y, v)
        }
        _ => Err(GeomError::InvalidInput(format!(
            "map {} has {}-dimensional image, ambient metric does not match",
            map.name, map.dim_out
        ))),
    }
}

/// `(map* F)(x, ξ) = F(map(x), J(x)ξ)` using the closed Jacobian when the
/// map has one.
pub fn pullback(map: &ChartMap, ambient: Ambient<'_>, x: Point2, xi: Vec2) -> Result<f64> {
    let jac = map.jacobian(x)?;
    pullback_with(map, ambient, x, xi, jac)
}

/// [`pullback`] with the central-difference Jacobian regardless of whether a
/// closed one exists.
pub fn pullback_numeric(map: &ChartMap, ambient: Ambient<'_>, x: Point2, xi: Vec2) -> Result<f64> {
    let jac = map.numeric_jacobian(x)?;
    pullback_with(map, ambient, x, xi, jac)
}

/// `max |dst(map(x), Jξ) − src(x, ξ)| / src(x, ξ)` over the samples.
///
/// A sample where either side fails to evaluate counts as an infinite
/// residual.
pub fn isometry_check<S, D>(map: &ChartMap, src: &S, dst: &D, samples: &[(Point2, Vec2)]) -> f64
where
    S: FinslerMetric + ?Sized,
    D: FinslerMetric,
{
    samples
        .iter()
        .map(|&(x, xi)| {
            let lhs = pullback(map, Ambient::Plane(dst), x, xi);
            match (lhs, src.eval(x, xi)) {
                (Ok(a), Ok(b)) if b != 0.0 => (a - b).abs() / b,
                (Ok(a), Ok(b)) if a == b => 0.0,
                _ => f64::INFINITY,
            }
        })
        .fold(0.0, f64::max)
}

/// Euclidean radius of the Poincaré unit disc, `(e − 1)/(e + 1) = tanh ½`.
pub fn poincare_radius() -> f64 {
    0.5_f64.tanh()
}

/// Centre `(0, e + 1/e)` and radius `e − 1/e` of the Euclidean disc that is
/// the hyperbolic unit disc about `(0, 2)` in the upper half-plane.
pub fn upper_disc() -> (Point2, f64) {
    let e = 1.0_f64.exp();
    (Vec2::new(0.0, e + 1.0 / e), e - 1.0 / e)
}

fn check_poincare(x: Point2) -> Result<()> {
    if within(x, poincare_radius() - crate::disc::BOUNDARY_MARGIN) {
        Ok(())
    } else {
        Err(GeomError::out_of_domain(x, "poincare unit disc |x| < tanh 1/2"))
    }
}

fn check_upper(x: Point2) -> Result<()> {
    let (c, rad) = upper_disc();
    if x.is_finite() && rad - (x - c).norm() >= crate::disc::BOUNDARY_MARGIN {
        Ok(())
    } else {
        Err(GeomError::out_of_domain(x, "upper half-plane unit disc about (0, 2)"))
    }
}

fn poincare_parts(x: Point2, xi: Vec2) -> (f64, f64) {
    let c = 1.0 - klein_radius().powi(2);
    let s = x.norm_sq();
    let xx = x.dot(xi);
    let den = (1.0 - s).powi(2) - c * (1.0 + s).powi(2);
    let rad = (1.0 - s).powi(2) * xi.norm_sq() - c * ((1.0 + s).powi(2) * xi.norm_sq() - 4.0 * xx * xx);
    let alpha = 2.0 * rad.sqrt() / den;
    let beta = 4.0 * c * (1.0 + s) * xx / ((1.0 - s) * den);
    (alpha, beta)
}

/// Funk structure of the Poincaré unit disc, `α_P + β_P`:
///
/// `α_P = 2√((1−|x|²)²|ξ|² − (1−r²)[(1+|x|²)²|ξ|² − 4⟨x,ξ⟩²]) / ((1−|x|²)² − (1−r²)(1+|x|²)²)`,
/// `β_P = 4(1−r²)(1+|x|²)⟨x,ξ⟩ / ((1−|x|²)((1−|x|²)² − (1−r²)(1+|x|²)²))`.
pub fn funk_poincare(x: Point2, xi: Vec2) -> Result<f64> {
    check_poincare(x)?;
    let (a, b) = poincare_parts(x, xi);
    Ok(a + b)
}

struct UpperTerms {
    c: f64,
    d: f64,
    q: f64,
    rad: f64,
    num_beta: f64,
}

fn upper_terms(x: Point2, xi: Vec2) -> UpperTerms {
    let c = 1.0 - klein_radius().powi(2);
    let s = x.norm_sq();
    let d = 4.0 + s;
    let xx = x.dot(xi);
    let q = 16.0 * x.y.powi(2);
    let m = d * xi.x - 2.0 * x.x * xx;
    let rad = q * xi.norm_sq() - c * (16.0 * xx * xx + m * m);
    let num_beta = c * d * (x.x * xi.x * d - (4.0 - s + 2.0 * x.x * x.x) * xx);
    UpperTerms { c, d, q, rad, num_beta }
}

fn upper_parts(x: Point2, xi: Vec2) -> (f64, f64) {
    let t = upper_terms(x, xi);
    let den = t.q - t.c * t.d * t.d;
    let alpha = 4.0 * t.rad.sqrt() / den;
    let beta = t.num_beta / (x.y.powi(2) * den);
    (alpha, beta)
}

/// Funk structure of the hyperbolic unit disc about `(0, 2)` in the upper
/// half-plane, `α_U + β_U`, with `c = 1 − r²`, `D = 4 + |x|²`:
///
/// `α_U = 4√(16(x²)²|ξ|² − c[16⟨x,ξ⟩² + (Dξ¹ − 2x¹⟨x,ξ⟩)²]) / (16(x²)² − cD²)`,
/// `β_U = cD[x¹ξ¹D − (4 − |x|² + 2(x¹)²)⟨x,ξ⟩] / ((x²)²(16(x²)² − cD²))`.
pub fn funk_upper(x: Point2, xi: Vec2) -> Result<f64> {
    check_upper(x)?;
    let (a, b) = upper_parts(x, xi);
    Ok(a + b)
}

/// The upper half-plane Funk structure with `β_U` exactly as it is
/// commonly printed: denominator `(x²)²(16(x²)² − cD)`, `D` unsquared.
/// Kept for comparison against [`funk_upper`]; it is not the pullback.
pub fn funk_upper_printed(x: Point2, xi: Vec2) -> Result<f64> {
    check_upper(x)?;
    let t = upper_terms(x, xi);
    let alpha = 4.0 * t.rad.sqrt() / (t.q - t.c * t.d * t.d);
    let beta = t.num_beta / (x.y.powi(2) * (t.q - t.c * t.d));
    Ok(alpha + beta)
}

/// Funk structure of the Poincaré unit disc as a [`FinslerMetric`].
#[derive(Debug, Clone, Copy, Default)]
pub struct PoincareFunk;

impl FinslerMetric for PoincareFunk {
    fn name(&self) -> &str {
        "poincare-funk"
    }
    fn in_domain(&self, x: Point2) -> bool {
        check_poincare(x).is_ok()
    }
    fn eval_unchecked(&self, x: Point2, xi: Vec2) -> f64 {
        let (a, b) = poincare_parts(x, xi);
        a + b
    }
    fn boundary_distance(&self, x: Point2) -> f64 {
        poincare_radius() - x.norm()
    }
    fn randers_split(&self, x: Point2, xi: Vec2) -> Option<(f64, f64)> {
        Some(poincare_parts(x, xi))
    }
}

/// Funk structure of the upper half-plane unit disc as a [`FinslerMetric`].
#[derive(Debug, Clone, Copy, Default)]
pub struct UpperFunk;

impl FinslerMetric for UpperFunk {
    fn name(&self) -> &str {
        "upper-funk"
    }
    fn in_domain(&self, x: Point2) -> bool {
        check_upper(x).is_ok()
    }
    fn eval_unchecked(&self, x: Point2, xi: Vec2) -> f64 {
        let (a, b) = upper_parts(x, xi);
        a + b
    }
    fn boundary_distance(&self, x: Point2) -> f64 {
        let (c, rad) = upper_disc();
        rad - (x - c).norm()
    }
    fn randers_split(&self, x: Point2, xi: Vec2) -> Option<(f64, f64)> {
        Some(upper_parts(x, xi))
    }
}

/// Riemannian Poincaré disc norm `2|ξ|/(1 − |x|²)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PoincareNorm;

impl FinslerMetric for PoincareNorm {
    fn name(&self) -> &str {
        "poincare"
    }
    fn in_domain(&self, x: Point2) -> bool {
        within(x, 1.0 - crate::disc::BOUNDARY_MARGIN)
    }
    fn eval_unchecked(&self, x: Point2, xi: Vec2) -> f64 {
        2.0 * xi.norm() / (1.0 - x.norm_sq())
    }
    fn boundary_distance(&self, x: Point2) -> f64 {
        1.0 - x.norm()
    }
    fn randers_split(&self, x: Point2, xi: Vec2) -> Option<(f64, f64)> {
        Some((self.eval_unchecked(x, xi), 0.0))
    }
}

/// Riemannian upper half-plane norm `|ξ|/x²`.
#[derive(Debug, Clone, Copy, Default)]
pub struct UpperHalfNorm;

impl FinslerMetric for UpperHalfNorm {
    fn name(&self) -> &str {
        "upper-half"
    }
    fn in_domain(&self, x: Point2) -> bool {
        x.is_finite() && x.y > 0.0
    }
    fn eval_unchecked(&self, x: Point2, xi: Vec2) -> f64 {
        xi.norm() / x.y
    }
    fn boundary_distance(&self, x: Point2) -> f64 {
        x.y
    }
    fn randers_split(&self, x: Point2, xi: Vec2) -> Option<(f64, f64)> {
        Some((self.eval_unchecked(x, xi), 0.0))
    }
}

/// `F(f(x), df_x ξ)`: the Funk metric pulled back to the Poincaré disc.
pub fn funk_poincare_pullback(x: Point2, xi: Vec2) -> Result<f64> {
    check_poincare(x)?;
    pullback(&ChartMap::poincare_to_klein(), Ambient::Plane(&KleinFunk), x, xi)
}

/// `F(g⁻¹(x), dg⁻¹_x ξ)`: the Funk metric pulled back to the upper
/// half-plane.
pub fn funk_upper_pullback(x: Point2, xi: Vec2) -> Result<f64> {
    check_upper(x)?;
    pullback(&ChartMap::upper_to_klein(), Ambient::Plane(&KleinFunk), x, xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klein::{funk_metric, KleinNorm};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn image_examples() {
        let r = klein_radius();
        assert_eq!(
            map_eval(&ChartMap::hyperboloid(), Vec2::ZERO).unwrap(),
            Image::Space(Vec3::new(0.0, 0.0, 1.0))
        );
        assert_eq!(
            map_eval(&ChartMap::hemisphere(), Vec2::ZERO).unwrap(),
            Image::Space(Vec3::new(0.0, 0.0, r))
        );
        assert_eq!(
            map_eval(&ChartMap::upper_to_klein(), Vec2::new(0.0, 2.0)).unwrap(),
            Image::Plane(Vec2::ZERO)
        );
        assert_eq!(
            map_eval(&ChartMap::klein_to_upper(), Vec2::ZERO).unwrap(),
            Image::Plane(Vec2::new(0.0, 2.0))
        );
    }

    #[test]
    fn images_lie_on_their_surfaces() {
        let r = klein_radius();
        let x = Vec2::new(0.41, -0.33);
        let Image::Space(p) = map_eval(&ChartMap::hyperboloid(), x).unwrap() else {
            panic!()
        };
        assert!((p.z - (1.0 + p.x * p.x + p.y * p.y).sqrt()).abs() < 1e-12);
        let Image::Space(q) = map_eval(&ChartMap::hemisphere(), x).unwrap() else {
            panic!()
        };
        assert!((q.norm() - r).abs() < 1e-12);
    }

    #[test]
    fn g_and_g_inv_are_inverse() {
        let x = Vec2::new(0.3, -0.5);
        let Image::Plane(u) = map_eval(&ChartMap::klein_to_upper(), x).unwrap() else {
            panic!()
        };
        let Image::Plane(back) = map_eval(&ChartMap::upper_to_klein(), u).unwrap() else {
            panic!()
        };
        assert!((back - x).max_abs() < 1e-14);
    }

    #[test]
    fn closed_jacobians_match_numeric() {
        for map in [
            ChartMap::poincare_to_klein(),
            ChartMap::upper_to_klein(),
            ChartMap::hyperboloid(),
            ChartMap::hemisphere(),
            ChartMap::identity(),
        ] {
            let x = if map.name == "g_inv" {
                Vec2::new(0.4, 2.3)
            } else {
                Vec2::new(0.2, -0.35)
            };
            let closed = map.jacobian_closed(x).unwrap().unwrap();
            let numeric = map.numeric_jacobian(x).unwrap();
            assert!(closed.max_abs_diff(&numeric) < 1e-6, "{}", map.name);
        }
        assert!(ChartMap::klein_to_upper().jacobian_closed(Vec2::ZERO).is_none());
    }

    #[test]
    fn map_domain_errors() {
        assert!(map_eval(&ChartMap::hyperboloid(), Vec2::new(0.8, 0.0)).is_err());
        assert!(map_eval(&ChartMap::upper_to_klein(), Vec2::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn hyperboloid_and_hemisphere_realize_funk() {
        let x = Vec2::new(0.3, -0.2);
        let xi = Vec2::new(-0.7, 0.4);
        let f = funk_metric(x, xi).unwrap();
        let fl = pullback(
            &ChartMap::hyperboloid(),
            Ambient::Space(&AmbientMetric::lorentz_randers()),
            x,
            xi,
        )
        .unwrap();
        let fp = pullback(
            &ChartMap::hemisphere(),
            Ambient::Space(&AmbientMetric::hemisphere_randers()),
            x,
            xi,
        )
        .unwrap();
        assert!(rel(fl, f) < 1e-12, "{fl} vs {f}");
        assert!(rel(fp, f) < 1e-12, "{fp} vs {f}");
    }

    #[test]
    fn lorentz_randers_rejects_timelike() {
        let m = AmbientMetric::lorentz_randers();
        let r = m.eval(Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, 1.0));
        assert!(matches!(r, Err(GeomError::LorentzSignature { .. })));
    }

    #[test]
    fn poincare_closed_form() {
        let r = klein_radius();
        let xi = Vec2::new(0.6, -0.8);
        assert!(rel(funk_poincare(Vec2::ZERO, xi).unwrap(), 2.0 / r) < 1e-14);
        let x = Vec2::new(0.2, 0.1);
        let a = funk_poincare(x, Vec2::new(1.0, 0.0)).unwrap();
        let b = funk_poincare(x, Vec2::new(-1.0, 0.0)).unwrap();
        assert!((a - b).abs() > 1e-3);
        let pb = funk_poincare_pullback(x, Vec2::new(0.3, 0.9)).unwrap();
        assert!(rel(funk_poincare(x, Vec2::new(0.3, 0.9)).unwrap(), pb) < 1e-9);
        assert!(funk_poincare(Vec2::new(0.47, 0.0), xi).is_err());
    }

    #[test]
    fn upper_closed_form_matches_pullback_and_print_does_not() {
        let x = Vec2::new(0.5, 2.6);
        let xi = Vec2::new(0.3, -0.8);
        let pb = funk_upper_pullback(x, xi).unwrap();
        assert!(rel(funk_upper(x, xi).unwrap(), pb) < 1e-9);
        assert!(rel(funk_upper_printed(x, xi).unwrap(), pb) > 1e-3);
        let centre = funk_upper_pullback(Vec2::new(0.0, 2.0), xi).unwrap();
        assert!(centre > 0.0 && funk_upper(Vec2::new(0.0, 2.0), xi).unwrap() > 0.0);
    }

    #[test]
    fn classical_isometries() {
        let samples = [
            (Vec2::new(0.1, 0.2), Vec2::new(1.0, 0.0)),
            (Vec2::new(-0.5, 0.3), Vec2::new(0.2, -0.7)),
            (Vec2::new(0.6, -0.6), Vec2::new(-0.4, 0.1)),
        ];
        let g = isometry_check(
            &ChartMap::klein_to_upper(),
            &KleinNorm::unit(),
            &UpperHalfNorm,
            &samples,
        );
        assert!(g <= 1e-9, "{g}");
        let f = isometry_check(
            &ChartMap::poincare_to_klein(),
            &PoincareNorm,
            &KleinNorm::unit(),
            &samples,
        );
        assert!(f <= 1e-9, "{f}");
        assert_eq!(
            isometry_check(&ChartMap::identity(), &KleinFunk, &KleinFunk, &samples[..1]),
            0.0
        );
    }
}
