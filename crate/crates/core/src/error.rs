use thiserror::Error;

/// Errors raised by the numerical and modelling layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the real domain of a special function.
    #[error("{function}: argument {value} outside domain ({reason})")]
    Domain {
        function: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// No vertical contour separates the two pole families, or two poles
    /// needed by a residue expansion coincide.
    #[error("degenerate parameters in {context}: {detail}")]
    Degenerate { context: &'static str, detail: String },

    /// The Mellin-Barnes integrand does not decay along the contour, or the
    /// quadrature failed to reach its tolerance.
    #[error("convergence failure in {context}: {detail}")]
    Convergence { context: &'static str, detail: String },

    /// A model parameter violates its invariant.
    #[error("invalid parameter `{field}`: {message}")]
    InvalidParameter { field: &'static str, message: String },

    /// A closed form produced a value outside its admissible range by more
    /// than the clamping slack.
    #[error("numerical failure in {operation}: {detail}")]
    Numerical { operation: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(field: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            message: message.into(),
        }
    }
}
