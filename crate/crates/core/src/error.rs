use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// Structural verdicts (a braiding that is not of Cartan type, a datum that
/// fails validation) are reported through dedicated result types, not here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("braiding must be symmetric (q_ij = q_ji); twist it first")]
    RequiresSymmetric,

    #[error("needs a field extension: {0}")]
    NeedsFieldExtension(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("completion diverged at overlap {overlap}: {detail}")]
    CompletionDiverged { overlap: String, detail: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
