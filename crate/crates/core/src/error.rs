use thiserror::Error;

use crate::complex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: incompatible shapes {}x{} and {}x{}", left.0, left.1, right.0, right.1)]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("a simplex needs at least one vertex")]
    EmptySimplex,

    #[error("vertex {0} appears more than once in a simplex")]
    DuplicateVertex(u64),

    #[error("face index {index} out of range for the {dimension}-simplex {simplex}")]
    FaceIndexOutOfRange {
        simplex: Simplex,
        dimension: usize,
        index: usize,
    },

    #[error("a 0-simplex has no faces: {0}")]
    FaceOfVertex(Simplex),

    #[error("not face-closed: {simplex} is present but its face {missing} is not")]
    NotFaceClosed { simplex: Simplex, missing: Simplex },

    #[error(transparent)]
    Filtration(#[from] crate::filtration::FiltrationViolation),

    #[error("a filtration needs at least one level")]
    EmptyFiltration,

    #[error("level indices must satisfy {constraint}; got j = {j}, p = {p}, last level m = {last}")]
    LevelRange {
        j: usize,
        p: usize,
        last: usize,
        constraint: &'static str,
    },

    #[error("negative multiplicity {value} for n = {n}, birth {j}, death {death}")]
    NegativeMultiplicity {
        n: usize,
        j: usize,
        death: String,
        value: i64,
    },

    #[error("enumeration bound exceeded: {what} needs 2^{bits} vectors, limit is 2^{limit}")]
    EnumerationBound {
        what: &'static str,
        bits: usize,
        limit: usize,
    },

    #[error("boundaries are not contained in cycles in dimension {0}")]
    BoundaryNotCycle(usize),
}
