use thiserror::Error;

/// Engine-wide error type.
///
/// The variants mirror the failure classes of the public operations:
/// `Parse` carries source locations, `Structure` covers malformed inputs
/// (rank mismatches, unknown generators), `Domain` covers inputs outside an
/// operation's mathematical domain (inhomogeneous arguments, negative powers
/// of non-invertible generators, non-Hom cochains), `Arith` covers exact
/// arithmetic failures (zero denominators, singular matrices), and
/// `Consistency` signals that two routes that must agree did not.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("structural error: {0}")]
    Structure(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic error: {0}")]
    Arith(String),
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn arith(msg: impl Into<String>) -> Self {
        Error::Arith(msg.into())
    }
    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
