//! Error type shared by all evaluators.

use crate::Complex;

/// Errors reported by series evaluation and curve computation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A gamma-function or series parameter sits exactly on a pole
    /// (a nonpositive integer).
    #[error("pole: {what} = {arg} is a nonpositive integer")]
    Pole { what: &'static str, arg: Complex },

    /// A series failed to satisfy its stopping rule within the allowed
    /// number of terms.
    #[error("series did not converge within {max_terms} terms")]
    NonConvergence { max_terms: usize },

    /// An argument lies outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value left the representable floating-point range, or a
    /// computation produced a non-finite intermediate.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Frame construction failed because the trajectory's derivatives at
    /// the base point are too small or nearly parallel.
    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// True when `z` is a nonpositive integer on the real axis, i.e. a pole of
/// the gamma function.
pub(crate) fn is_nonpositive_integer(z: Complex) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}
