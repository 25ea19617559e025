use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

/// Failures surfaced by the geometry kernels. Construction errors guard type
/// invariants; `StepExitsCone` and `DegenerateGram` signal numerical
/// breakdown rather than bad arguments.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("matrix order must be at least 1")]
    ZeroOrder,

    #[error("order mismatch: expected {expected}, got {got}")]
    OrderMismatch { expected: usize, got: usize },

    #[error("vector of length {len} is not a vech vector for order {n}")]
    VechLength { len: usize, n: usize },

    #[error("matrix is not symmetric: max |m_ij - m_ji| = {asym:.3e}")]
    NotSymmetric { asym: f64 },

    #[error("matrix is not positive definite at tolerance: lambda_min = {lambda_min:.3e}, floor = {floor:.3e}")]
    NotPositiveDefinite { lambda_min: f64, floor: f64 },

    #[error("matrix is numerically singular: |det| = {det:.3e}, floor = {floor:.3e}")]
    Singular { det: f64, floor: f64 },

    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("finite-difference step {step:.3e} exits the cone even after {halvings} halvings")]
    StepExitsCone { step: f64, halvings: u32 },

    #[error("step {step:.3e} outside the supported range [{min:.1e}, {max:.1e}]")]
    StepOutOfRange { step: f64, min: f64, max: f64 },

    #[error("tensor valence {got} not supported here (expected {expected})")]
    ValenceMismatch { expected: usize, got: usize },

    #[error("metric Gram matrix is degenerate at tolerance (sigma_min/sigma_max = {ratio:.3e})")]
    DegenerateGram { ratio: f64 },

    #[error("coefficient {name} is not available for order n = {n}")]
    CoefficientUnavailable { name: &'static str, n: usize },

    #[error("expected 2 or 3 directions, got {got}")]
    BadArity { got: usize },

    #[error("rejected serialized value: {reason}")]
    BadSerialForm { reason: &'static str },

    #[error("Monte Carlo configuration needs at least 2 samples and a nonzero chunk size")]
    BadMcConfig,
}
