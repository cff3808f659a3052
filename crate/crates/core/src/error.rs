use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("wedge of degrees {left} and {right} exceeds 6")]
    DegreeOverflow { left: usize, right: usize },
    #[error("cannot contract a 0-form")]
    ContractZeroForm,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("coefficient array of length {got} does not match degree {degree} (expected {expected})")]
    BadLength {
        degree: usize,
        got: usize,
        expected: usize,
    },
    #[error("form degree {0} out of range 0..=6")]
    BadDegree(usize),
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),
    #[error("form is not stable: {0}")]
    NotStable(String),
    #[error("constraint `{constraint}` violated (residual {residual:.3e})")]
    ConstraintViolated { constraint: String, residual: f64 },
    #[error("induced metric is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    MetricNotPositive { min_eigenvalue: f64 },
    #[error("finite-difference step {step:.3e} leaves the stable orbit")]
    StepTooLarge { step: f64 },
    #[error("nearly-Kähler conventions do not match: {0}")]
    ConventionMismatch(String),
    #[error("form field is not basic: vertical residual {residual:.3e}")]
    HorizontalityViolated { residual: f64 },
    #[error("invalid Lie algebra element: {0}")]
    InvalidLieAlgebra(String),
    #[error("too few samples: {got} (need at least {min})")]
    TooFewSamples { got: usize, min: usize },
}
