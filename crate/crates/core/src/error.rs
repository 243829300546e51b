use thiserror::Error;

/// Errors raised by the numerical kernels and the wave models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// A parameter bundle violates its invariants.
    #[error("invalid parameter `{name}`: {detail}")]
    InvalidParameter { name: &'static str, detail: String },

    /// The evaluator could not certify its accuracy target.
    #[error("accuracy target {target:e} not met (estimated error {estimate:e}) at z = {z}")]
    Accuracy { z: f64, estimate: f64, target: f64 },

    /// A truncated series is still growing at its last retained term.
    #[error("series not converged after {terms} terms (last term {last_term:e})")]
    SeriesDivergence { terms: usize, last_term: f64 },

    /// Not enough samples for the requested stencil or evaluation point.
    #[error("insufficient samples: need {needed}, have {available}")]
    InsufficientSamples { needed: usize, available: usize },

    /// Fractional or Caputo order outside its admissible range.
    #[error("order {order} outside {range}")]
    Order { order: f64, range: &'static str },

    /// The result overflows `f64`.
    #[error("overflow evaluating {function} at {at}")]
    Overflow { function: &'static str, at: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn param(name: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            detail: detail.into(),
        }
    }
}
