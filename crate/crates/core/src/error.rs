use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected} coordinates, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not L-dominant for the Levi factor of P_(1,d)")]
    NotLDominant(String),
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("ambient rank d+1 = {0} outside supported range 2..=12")]
    UnsupportedRank(usize),
    #[error("value does not fit in a machine integer")]
    Overflow,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not contained in the ambient span")]
    NotContained,
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("filtration is not by subcomplexes: {0}")]
    NotSubcomplex(String),

    #[error("form degree p = {p} out of range 0..={d}")]
    FormDegreeOutOfRange { p: usize, d: usize },
    #[error("subspace index j = {j} out of range 0..={max}")]
    SubspaceIndexOutOfRange { j: usize, max: usize },
    #[error("window exceeded: {0}")]
    WindowExceeded(String),
    #[error("empty cover")]
    EmptyCover,
    #[error("invalid open set: {0}")]
    InvalidOpen(String),
    #[error("slice mismatch: {0}")]
    SliceMismatch(String),

    #[error("invalid composition {parts:?} of {n}")]
    InvalidComposition { parts: Vec<usize>, n: usize },

    #[error("serialization failed: {0}")]
    Serialization(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
