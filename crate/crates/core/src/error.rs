use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the function.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// Parameter outside the range the implementation supports, or a result
    /// that cannot be represented.
    #[error("range error in {func}: {detail}")]
    Range { func: &'static str, detail: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A truncation, panel or iteration budget was exhausted.
    #[error("budget exhausted in {func}: {detail}")]
    Budget { func: &'static str, detail: String },

    /// Invalid geometry or parameters for an H1 atom.
    #[error("invalid atom: {0}")]
    Atom(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { func, detail: detail.into() }
    }

    pub(crate) fn range(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Range { func, detail: detail.into() }
    }

    pub(crate) fn budget(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Budget { func, detail: detail.into() }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
