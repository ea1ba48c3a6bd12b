use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("negative diagonal entry {entry} = {value} while evaluating {context}")]
    NegativeDiagonal { entry: String, value: f64, context: String },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("input is a member of {0}; no separating certificate exists")]
    IsMember(String),

    #[error("input is not a member of {0}")]
    NotMember(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("inconsistent membership profile: {0}")]
    Inconsistent(String),

    #[error("certificate failed verification: {0}")]
    CertificateFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
