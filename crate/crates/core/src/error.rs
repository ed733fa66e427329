use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point set needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point set has {got} points, more than the supported maximum of {max}")]
    TooManyPoints { got: usize, max: usize },
    #[error("coordinate of point {index} exceeds the bound 10^6 in absolute value")]
    CoordinateOutOfRange { index: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("graph would have {got} vertices, more than the cap {cap}")]
    GraphTooLarge { got: usize, cap: usize },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("move rejected: {0}")]
    InvalidMove(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
