use thiserror::Error;

use crate::free_group::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid word {0:?}: expected letters from {{a, A, b, B}}")]
    ParseWord(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("support error: {0}")]
    Support(String),

    #[error("window too small: need radius >= {required}, have {available}")]
    WindowTooSmall { required: usize, available: usize },

    #[error("radius {radius} exceeds the exhaustive guard ({max}); raise OWF_MAX_RADIUS to override")]
    ResourceGuard { radius: usize, max: usize },

    #[error("kernel has dimension {dim}; refusing to enumerate more than 2^{max_dim} windows")]
    KernelTooLarge { dim: usize, max_dim: usize },

    #[error("inconsistent level shapes: {0}")]
    LevelShape(String),

    #[error("transversal of depth {depth} does not contain the orbit of {element}")]
    InsufficientDepth { depth: usize, element: String },

    #[error("orbit membership undecided within search radius {radius}")]
    Undecidable { radius: usize },

    #[error("generators {0:?} do not form a free basis (homomorphism is not injective)")]
    NotInjective(Vec<Word>),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("undefined table entry: {0}")]
    UndefinedEntry(String),

    #[error("invalid weights: {0}")]
    Weights(String),
}

pub type Result<T> = std::result::Result<T, Error>;
