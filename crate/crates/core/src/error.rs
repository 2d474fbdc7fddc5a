use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse failure classes, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Numerical,
    DegenerateClass,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    InvalidInput(String),

    #[error("graph is not strongly connected: {0}")]
    NotStronglyConnected(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("degenerate class{}: {reason}", .class.map(|c| format!(" {c}")).unwrap_or_default())]
    DegenerateClass { class: Option<usize>, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Numerical(_) => ErrorKind::Numerical,
            Error::DegenerateClass { .. } => ErrorKind::DegenerateClass,
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::NotStronglyConnected(_)
            | Error::Io { .. } => ErrorKind::Input,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// Attach a class index to a degenerate-class error raised without one.
    pub(crate) fn for_class(self, class: usize) -> Self {
        match self {
            Error::DegenerateClass { class: None, reason } => Error::DegenerateClass {
                class: Some(class),
                reason,
            },
            other => other,
        }
    }
}
