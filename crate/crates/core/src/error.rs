use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a complex: d∘d ≠ 0 starting in degree {degree}")]
    NotAComplex { degree: i64 },

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism `{0}`")]
    UnknownHom(String),

    #[error("complexes live over different presentations")]
    PresentationMismatch,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("model file: {0}")]
    Model(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
