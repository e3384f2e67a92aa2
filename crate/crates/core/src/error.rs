use thiserror::Error;

/// Failure modes shared by every stage of a reduction.
///
/// The variants mirror the recovery a caller is expected to take: retry with
/// a new seed (`Degenerate*`), raise the working precision
/// (`PrecisionExhausted`, `NoConvergence`), or fix the input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("roots closer than {separation} bits of separation; polynomial is not squarefree within tolerance")]
    NonSquarefree { separation: u32 },

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("black-box map has degree above the declared {declared} (reconstruction residual {residual:e})")]
    DegreeMismatch { declared: usize, residual: f64 },

    #[error("linear form vanishes within tolerance")]
    ZeroForm,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("degenerate configuration in {stage} after {attempts} attempt(s): {detail}")]
    DegenerateConfiguration {
        stage: String,
        attempts: usize,
        detail: String,
    },

    #[error("degenerate plane section: {0}")]
    DegenerateSection(String),

    #[error("constant term vanishes within tolerance")]
    ZeroConstant,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn degenerate(stage: &str, attempts: usize, detail: impl Into<String>) -> Self {
        Error::DegenerateConfiguration {
            stage: stage.to_string(),
            attempts,
            detail: detail.into(),
        }
    }

    /// Whether rerunning the failing step with a fresh seed may succeed.
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            Error::DegenerateConfiguration { .. }
                | Error::DegenerateSection(_)
                | Error::ZeroForm
                | Error::ZeroConstant
                | Error::NonSquarefree { .. }
                | Error::DegreeMismatch { .. }
                | Error::NoConvergence { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
