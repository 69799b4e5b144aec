use thiserror::Error;

/// Errors produced by the polynomial, norm, differentiation and check APIs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("root within {distance:.3e} of the unit circle; use the Jensen path")]
    NearCircleRoot { distance: f64 },
    #[error("frequency {frequency} exceeds bandwidth {bandwidth}")]
    BandwidthExceeded { frequency: f64, bandwidth: f64 },
    #[error("root {root_modulus:.6} lies inside the forbidden disk of radius {rho}")]
    RootInForbiddenRegion { root_modulus: f64, rho: f64 },
    #[error("trigonometric polynomial is not real-valued (asymmetry {asymmetry:.3e})")]
    NotRealValued { asymmetry: f64 },
    #[error("point lies on the unit circle")]
    OnUnitCircle,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParam(msg.into())
}
