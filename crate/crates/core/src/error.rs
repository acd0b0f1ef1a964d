use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("input error: {0}")]
    Input(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown hyperplane `{0}`")]
    UnknownHyperplane(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A deficiency set is larger than the ambient dimension.
    #[error("ambient dimension {n} is too small: vertex `{vertex}` has {found} adjacent separating hyperplanes")]
    AmbientDimension { n: usize, vertex: String, found: usize },

    /// A configurable size cap was hit.
    #[error("size cap {cap} exceeded while {context} (reached {reached})")]
    CapExceeded { context: String, cap: usize, reached: usize },

    #[error("invalid group action: {0}")]
    Action(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
