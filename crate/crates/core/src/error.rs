use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid monoid at {path}: {message}")]
    InvalidMonoid { path: String, message: String },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    /// A computation would exceed a configured size cap.
    #[error("resource limit: {what} exceeds cap {cap}")]
    Resource { what: String, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid_monoid(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidMonoid {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn resource(what: impl Into<String>, cap: u64) -> Self {
        Error::Resource { what: what.into(), cap }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
