use alloc::string::String;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("malformed simplex {0:?}: repeated vertex")]
    MalformedSimplex(alloc::vec::Vec<u32>),
    #[error("vertex ids are 1-based, got 0")]
    ZeroVertex,
    #[error("invalid filtration: face {face} enters after coface {coface}")]
    InvalidFiltration { face: String, coface: String },
    #[error("ordering does not cover the complex")]
    MalformedOrdering,
    #[error("cell {death} kills cell {birth} before it is born")]
    InvalidOrdering { birth: usize, death: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("point cloud is degenerate")]
    DegenerateCloud,
    #[error("non-finite coordinate in point {0}")]
    NonFinite(usize),
    #[error("vertices {0} and {1} share the value {2}")]
    NonGeneric(u32, u32, f64),
    #[error("vertex {0} has no value")]
    MissingValue(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("negative count in dimension {dim} at ({left}, {right})")]
    NegativeCount { dim: usize, left: usize, right: usize },
    #[error("numerical rank failure: mu_{dim}({s}, {t}) < 0")]
    NumericalRank { dim: usize, s: usize, t: usize },
    #[error("module is not tame: {0}")]
    NotTame(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
