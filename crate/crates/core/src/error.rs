use thiserror::Error;

/// Errors shared by every evaluation path in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op} did not converge: {detail}")]
    NonConvergence { op: &'static str, detail: String },

    #[error("{op} diverges: {detail}")]
    Divergent { op: &'static str, detail: String },

    #[error("{op}: argument {x} is within {guard} of a pole")]
    Pole { op: &'static str, x: f64, guard: f64 },

    #[error("{op}: unsupported parameter: {detail}")]
    Unsupported { op: &'static str, detail: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    pub(crate) fn no_convergence(op: &'static str, detail: impl Into<String>) -> Self {
        Error::NonConvergence { op, detail: detail.into() }
    }

    pub(crate) fn divergent(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Divergent { op, detail: detail.into() }
    }

    /// True for both flavours of "the integral/series could not be summed".
    pub fn is_divergence(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::Divergent { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
