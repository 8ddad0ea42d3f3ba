use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("residue {a} is not coprime to modulus {q}")]
    InvalidResidue { q: u64, a: u64 },

    #[error("argument {x} exceeds table limit {limit}")]
    OutOfRange { x: f64, limit: u64 },

    #[error("gamma pole at non-positive integer {0}")]
    GammaPole(i64),

    #[error("singular kernel: {0}")]
    KernelSingularity(String),

    #[error("pole at s = 1")]
    Pole,

    #[error("zero certification failed for {character}: {detail}")]
    CertificationFailure { character: String, detail: String },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("zero table line {line}: {detail}")]
    Ingest { line: usize, detail: String },

    #[error("Mangoldt table limit {limit} too small, need at least {needed}")]
    TableTooSmall { limit: u64, needed: u64 },

    #[error("no zero set available for character {0}")]
    MissingZeroSet(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
