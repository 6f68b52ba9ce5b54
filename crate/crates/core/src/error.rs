use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("invalid-hole: {0}")]
    InvalidHole(String),
    #[error("shape-error: {0}")]
    Shape(String),
    #[error("not-dominant: {0}")]
    NotDominant(String),
    #[error("kind-error: {0}")]
    Kind(String),
    #[error("residue-error: starred columns need residue 1")]
    Residue,
    #[error("not-admissible: {0}")]
    NotAdmissible(String),
    #[error("too-large: component exceeds budget of {0} nodes")]
    TooLarge(usize),
    #[error("rank-error: n must be at least 4, got {0}")]
    Rank(usize),
    #[error("support-error: {0}")]
    Support(String),
    #[error("slide-blocked: {0}")]
    SlideBlocked(String),
    #[error("invalid KN tableau: {0}")]
    InvalidKn(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CrystalError>;
