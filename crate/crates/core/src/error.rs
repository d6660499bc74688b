use thiserror::Error;

use crate::mobius::MapClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("affine map unsupported (c = 0)")]
    AffineUnsupported,

    #[error("unsupported map class: expected {expected:?}, found {found:?}")]
    UnsupportedClass { expected: MapClass, found: MapClass },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point {re}{im:+}i is off the unit circle")]
    OffUnitCircle { re: f64, im: f64 },

    #[error("derivative is singular at the pole")]
    SingularDerivative,

    #[error("search exhausted after {steps} steps; closest approach {closest_distance:e} at step {closest_step}")]
    SearchExhausted {
        steps: u64,
        closest_distance: f64,
        closest_step: u64,
    },

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("wrong construction: {0}")]
    WrongConstruction(String),

    #[error("pseudo-orbit construction failed: {0}")]
    ConstructionFailed(Box<Error>),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
