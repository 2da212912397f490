use thiserror::Error;

use crate::linalg::Vec2;

/// Errors raised by metric evaluation and the numeric oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("tangent vector is zero")]
    ZeroVector,

    #[error("point ({}, {}) lies outside the domain of {domain}", .point.x, .point.y)]
    OutOfDomain { point: Vec2, domain: String },

    #[error("fundamental tensor is numerically singular (det = {det:e})")]
    SingularTensor { det: f64 },

    #[error("Lorentzian quadratic form is negative ({value:e}); vector is timelike")]
    LorentzSignature { value: f64 },

    #[error("wind has h-norm {norm} >= 1; no Randers metric exists")]
    DegenerateWind { norm: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl GeomError {
    pub(crate) fn out_of_domain(point: Vec2, domain: impl Into<String>) -> Self {
        GeomError::OutOfDomain {
            point,
            domain: domain.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
