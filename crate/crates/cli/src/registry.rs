//! Metrics selectable by name, with the chart that straightens their
//! geodesics and a distance function.

use funk_finsler::curvature::{funk_density, klein_density};
use funk_finsler::diff::{self, Stencil};
use funk_finsler::disc::{funk_distance_disc, DiscFunk, EuclideanDisc};
use funk_finsler::finsler::{bh_density_numeric, Euclidean};
use funk_finsler::geodesic::{curve_length, segment_length, Path};
use funk_finsler::klein::{funk_distance, klein_distance};
use funk_finsler::models::{map_eval, ChartMap, Image, Jacobian, PoincareFunk, PoincareNorm, UpperFunk, UpperHalfNorm};
use funk_finsler::parse::MetricName;
use funk_finsler::{FinslerMetric, GeomError, KleinFunk, KleinNorm, Mat2, Point2, Result, Vec2};

/// How to reach a chart in which the geodesics are straight lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Chart {
    /// Already straight.
    Straight,
    /// Poincaré disc, straightened by `f(x) = 2x/(1 + |x|²)`.
    Poincare,
    /// Upper half-plane, straightened by `g⁻¹`.
    Upper,
}

pub struct Model {
    pub name: MetricName,
    pub metric: Box<dyn FinslerMetric>,
    chart: Chart,
}

fn plane(image: Image) -> Point2 {
    match image {
        Image::Plane(p) => p,
        Image::Space(_) => unreachable!("planar chart returned a space point"),
    }
}

impl Model {
    pub fn new(name: MetricName) -> Result<Model> {
        let (metric, chart): (Box<dyn FinslerMetric>, Chart) = match name {
            MetricName::KleinFunk => (Box::new(KleinFunk), Chart::Straight),
            MetricName::Klein => (Box::new(KleinNorm::unit()), Chart::Straight),
            MetricName::PoincareFunk => (Box::new(PoincareFunk), Chart::Poincare),
            MetricName::UpperFunk => (Box::new(UpperFunk), Chart::Upper),
            MetricName::DiscFunk { radius } => (Box::new(DiscFunk::new(EuclideanDisc::new(radius)?)), Chart::Straight),
            MetricName::Poincare => (Box::new(PoincareNorm), Chart::Poincare),
            MetricName::UpperHalf => (Box::new(UpperHalfNorm), Chart::Upper),
            MetricName::Euclidean => (Box::new(Euclidean), Chart::Straight),
        };
        Ok(Model { name, metric, chart })
    }

    pub fn check(&self, x: Point2) -> Result<()> {
        if self.metric.in_domain(x) {
            Ok(())
        } else {
            Err(GeomError::OutOfDomain {
                point: x,
                domain: self.name.to_string(),
            })
        }
    }

    /// Image of `x` in the straightening chart.
    pub fn to_straight(&self, x: Point2) -> Result<Point2> {
        match self.chart {
            Chart::Straight => Ok(x),
            Chart::Poincare => map_eval(&ChartMap::poincare_to_klein(), x).map(plane),
            Chart::Upper => map_eval(&ChartMap::upper_to_klein(), x).map(plane),
        }
    }

    /// Differential of [`Model::to_straight`] at `x`.
    pub fn to_straight_jacobian(&self, x: Point2) -> Result<Mat2> {
        let jac = match self.chart {
            Chart::Straight => return Ok(Mat2::IDENTITY),
            Chart::Poincare => ChartMap::poincare_to_klein().jacobian(x)?,
            Chart::Upper => ChartMap::upper_to_klein().jacobian(x)?,
        };
        match jac {
            Jacobian::Plane(m) => Ok(m),
            Jacobian::Space(_) => unreachable!("planar chart returned a space Jacobian"),
        }
    }

    /// Inverse of [`Model::to_straight`].
    pub fn from_straight(&self, y: Point2) -> Result<Point2> {
        match self.chart {
            Chart::Straight => Ok(y),
            Chart::Poincare => {
                if !(y.is_finite() && y.norm() < 1.0) {
                    return Err(GeomError::OutOfDomain {
                        point: y,
                        domain: "klein disc |x| < 1".into(),
                    });
                }
                Ok(y * (1.0 / (1.0 + (1.0 - y.norm_sq()).sqrt())))
            }
            Chart::Upper => map_eval(&ChartMap::klein_to_upper(), y).map(plane),
        }
    }

    /// Distance from `x` to `y`.
    pub fn distance(&self, x: Point2, y: Point2) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        match self.name {
            MetricName::KleinFunk => funk_distance(x, y),
            MetricName::Klein => klein_distance(x, y),
            MetricName::DiscFunk { radius } => funk_distance_disc(&EuclideanDisc::new(radius)?, x, y),
            MetricName::Euclidean => Ok((y - x).norm()),
            MetricName::PoincareFunk | MetricName::UpperFunk => {
                funk_distance(self.to_straight(x)?, self.to_straight(y)?)
            }
            MetricName::Poincare | MetricName::UpperHalf => klein_distance(self.to_straight(x)?, self.to_straight(y)?),
        }
    }

    /// Length of the geodesic from `x` to `y`, integrated along the curve.
    pub fn geodesic_length(&self, x: Point2, y: Point2) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        if self.chart == Chart::Straight {
            return segment_length(&*self.metric, x, y);
        }
        let (a, b) = (self.to_straight(x)?, self.to_straight(y)?);
        let d = b - a;
        let position = |t: f64| self.from_straight(a + d * t).unwrap_or(Vec2::new(f64::NAN, f64::NAN));
        let tangent = |t: f64| diff::d1(|s| position(t + s), 1e-4, Stencil::Fourth);
        curve_length(
            &*self.metric,
            &Path::Parametric {
                position: &position,
                tangent: &tangent,
                t0: 0.0,
                t1: 1.0,
            },
        )
    }

    /// Busemann–Hausdorff density; closed where known.
    pub fn density(&self, x: Point2) -> Result<f64> {
        match self.name {
            MetricName::KleinFunk => funk_density(x),
            MetricName::Klein => klein_density(x),
            _ => bh_density_numeric(&*self.metric, x),
        }
    }
}
