use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("layout error: {0}")]
    Layout(String),

    #[error("Bell outcome {m} out of range for d = {d} (expected m < {})", d * d)]
    Outcome { m: usize, d: usize },

    #[error("post-selection probability {probability:e} is zero; weak values are undefined")]
    ZeroPostSelection { probability: f64 },

    #[error("basis error: {0}")]
    Basis(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("operator is not {expected}: deviation {deviation:e}")]
    Kind { expected: &'static str, deviation: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
