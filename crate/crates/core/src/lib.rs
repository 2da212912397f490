//! Numeric toolkit for the Funk–Finsler metric of the Klein unit disc.
//!
//! The Klein unit disc is the Euclidean disc of radius `tanh 1`. Its Funk
//! metric is a Randers metric `F = α + β`. This crate evaluates it in closed
//! form, realizes it through the classical models of the hyperbolic plane,
//! integrates its geodesics, computes its curvatures and Zermelo navigation
//! data, and checks every closed formula against a generic numeric oracle.
//!
//! ```
//! use funk_finsler::{klein, Vec2};
//!
//! let f = klein::funk_metric(Vec2::ZERO, Vec2::new(1.0, 0.0)).unwrap();
//! assert!((f - 1.0 / 1.0_f64.tanh()).abs() < 1e-15);
//! ```

pub mod curvature;
pub mod diff;
pub mod disc;
pub mod error;
pub mod finsler;
pub mod geodesic;
pub mod klein;
pub mod linalg;
pub mod models;
pub mod parse;
pub mod zermelo;

pub use error::{GeomError, Result};
pub use finsler::{FinslerMetric, MetricField, RandersData};
pub use klein::{klein_radius, KleinFunk, KleinNorm};
pub use linalg::{Mat2, Mat32, Point2, Vec2, Vec3};
