use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity must be at least 2, got {0}")]
    InvalidArity(usize),

    #[error("invalid parameter range: {0}")]
    InvalidRange(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("product with {factors} factors is not 1 mod {}", .arity - 1)]
    Arity { factors: usize, arity: usize },

    #[error("{object:?} is not a member of {family}")]
    NotInFamily {
        family: &'static str,
        object: String,
    },

    #[error("enumeration exceeded the guard of {limit} objects")]
    GuardExceeded { limit: usize },

    #[error("malformed object: {0}")]
    Malformed(String),
}

impl Error {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn not_in(family: &'static str, object: impl ToString) -> Self {
        Error::NotInFamily {
            family,
            object: object.to_string(),
        }
    }
}
