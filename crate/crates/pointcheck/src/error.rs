use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("basis is numerically dependent (smallest singular value ratio {0:.3e})")]
    RankDeficient(f64),
    #[error("degree {degree} exceeds dimension {dim}")]
    Degree { degree: usize, dim: usize },
    #[error("chart failure: {0}")]
    Chart(String),
    #[error("unstable differentiation (condition estimate {0:.3e})")]
    Unstable(f64),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
