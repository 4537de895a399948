use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebra mismatch: {left} atoms vs {right} atoms")]
    AlgebraMismatch { left: usize, right: usize },

    #[error("point {point} out of range for a point set of size {size}")]
    PointOutOfRange { point: usize, size: usize },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("{what}: requested {requested} exceeds cap {cap}{}", hint.as_deref().map(|h| format!(" ({h})")).unwrap_or_default())]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
        hint: Option<String>,
    },

    #[error("pool insufficient: no candidate separates points {0} and {1}")]
    PoolInsufficient(usize, usize),

    #[error("empty clopen set")]
    EmptyClopen,

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn cap(what: &'static str, requested: usize, cap: usize) -> Self {
        Error::CapExceeded {
            what,
            requested,
            cap,
            hint: None,
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
