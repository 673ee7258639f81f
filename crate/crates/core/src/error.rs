use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("duplicate point at indices {0} and {1}")]
    DuplicatePoint(usize, usize),

    #[error("weights do not reconstruct the target point")]
    ReconstructionMismatch,

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("target point must be nonzero")]
    ZeroTarget,

    #[error("zero normal vector in half-space")]
    ZeroNormal,

    #[error("polytope is infeasible")]
    InfeasiblePolytope,

    #[error("polytope is unbounded")]
    UnboundedPolytope,

    #[error("half-spaces do not cover the polytope")]
    NotCovered,

    #[error("half-space must be homogeneous (offset 0)")]
    NotHomogeneous,

    #[error("malformed numeral {0:?}")]
    Numeral(String),

    #[error("malformed game: {0}")]
    Game(String),

    #[error("index {index} out of range for {len} actions")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("action {0} compared with itself")]
    SameAction(usize),

    #[error("invalid mixed strategy: {0}")]
    InvalidMixture(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("invalid generator arguments: {0}")]
    Generator(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("search too large: {0}")]
    TooLarge(String),

    #[error("json: {0}")]
    Json(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
