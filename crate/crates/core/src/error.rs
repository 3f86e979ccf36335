use thiserror::Error;

/// Errors reported by the library.
///
/// `Internal` is reserved for violated mathematical guarantees (for example a
/// Hom space between interval modules of dimension greater than one); every
/// other variant describes bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("incompatible orientations")]
    IncompatibleOrientations,
    #[error("representations live over different orientations")]
    OrientationMismatch,
    #[error("representations live over different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
