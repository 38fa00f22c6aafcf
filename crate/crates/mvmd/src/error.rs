use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("shape mismatch: {left} vs {right} in {ctx}")]
    ShapeMismatch {
        left: String,
        right: String,
        ctx: &'static str,
    },

    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("dimension overflow computing {ctx} (exceeds 2^62)")]
    Overflow { ctx: &'static str },

    #[error("not invertible (criterion value {criterion:.3e})")]
    NotInvertible { criterion: f64 },

    #[error("series did not converge after {terms} terms (last term norm {last_norm:.3e})")]
    NonConvergent { terms: usize, last_norm: f64 },

    #[error("eigensolver failed to converge")]
    EigenFailure,

    #[error("state dimension not invariant: step maps dim {from} to dim {to}")]
    DimensionNotInvariant { from: usize, to: usize },

    #[error("numerical blow-up (NaN/Inf) at step {step}")]
    NumericalBlowUp { step: usize },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
