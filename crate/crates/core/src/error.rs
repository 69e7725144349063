use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid commutation factor at ({alpha}, {beta}): {reason}")]
    InvalidCommutationFactor { alpha: String, beta: String, reason: String },
    #[error("invalid multiplier: {0}")]
    InvalidMultiplier(String),
    #[error("grading violation: [{x}, {y}] has a component along {z}")]
    GradingViolation { x: String, y: String, z: String },
    #[error("antisymmetry fails for ({x}, {y})")]
    AntisymmetryViolation { x: String, y: String },
    #[error("Jacobi identity fails on ({x}, {y}, {z})")]
    JacobiViolation { x: String, y: String, z: String },
    #[error("representation property fails on ({x}, {y})")]
    RepresentationViolation { x: String, y: String },
    #[error("{element} is not homogeneous: it sends basis vector {col} to a multiple of {row}")]
    HomogeneityViolation { element: String, row: usize, col: usize },
    #[error("invalid submodule: {0}")]
    InvalidSubmodule(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("not completely reducible: {0}")]
    NotCompletelyReducible(String),
    #[error("invalid subgroup step: {0}")]
    InvalidSubgroupStep(String),
    #[error("invalid variant: {0}")]
    InvalidVariant(String),
    #[error("classification mismatch: {0}")]
    ClassificationMismatch(String),
}

impl Error {
    /// True for malformed input, as opposed to well-formed data that fails a mathematical check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::InvalidVariant(_) | Error::InvalidSubgroupStep(_) | Error::DivisionByZero
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
