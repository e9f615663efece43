use thiserror::Error;

/// Errors raised by the geometry layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error("point outside the domain: {0}")]
    OutsideDomain(String),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("degenerate fiber: f- = f+ = {0}")]
    DegenerateFiber(f64),
    #[error("boundary data is pure lightlike; the invisible domain is empty")]
    PureLightlike,
    #[error("boundary data violates the 1-Lipschitz condition between points {0} and {1}")]
    NotLipschitz(usize, usize),
    #[error("realizing foot is not unique: starts spread over {spread:.3e}")]
    UniquenessViolation { spread: f64 },
    #[error("point is outside the tight region")]
    NotTight,
    #[error("Gauss flow breaks down: I - tanh(t) B is singular")]
    FlowBreakdown,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
