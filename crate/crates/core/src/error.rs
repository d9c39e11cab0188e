use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the curve, jet, operator and polyanalytic layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("exponent {0} outside the supported range [-64, 64]")]
    ExponentRange(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("polyanalytic order {order} exceeds jet order + 1 = {limit}")]
    OrderMismatch { order: usize, limit: usize },

    #[error("point {z} is {distance:.3e} from the curve, inside the refusal band {band:.3e}")]
    NearBoundary {
        z: Complex64,
        distance: f64,
        band: f64,
    },

    #[error("point {z} is not in the {expected} domain")]
    WrongSide {
        z: Complex64,
        expected: &'static str,
    },

    #[error("input error: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
