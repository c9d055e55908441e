use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("angular momentum l={l} outside supported range 0..={max}")]
    Range { l: i64, max: u32 },

    #[error("{0}")]
    Domain(String),

    #[error("non-finite argument: {0}")]
    NonFinite(&'static str),

    #[error("basis mismatch: l={left} vs l={right}")]
    BasisMismatch { left: u32, right: u32 },

    #[error("unknown state name {name:?} for l={l}; valid names: {}", valid.join(", "))]
    UnknownName {
        l: u32,
        name: String,
        valid: Vec<String>,
    },

    #[error("structure check failed: {0}")]
    Structure(String),

    #[error("state is not axially symmetric (max |m|!=0 amplitude {0:.3e})")]
    NotAxisymmetric(f64),

    #[error("state evaluates to a complex-valued function (max |Im Y| {0:.3e}); build it from the real basis instead")]
    ComplexValued(f64),

    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),

    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
