use thiserror::Error;

use crate::Index;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed ring spec `{0}`")]
    MalformedRingSpec(String),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix ring size must be at least 1")]
    ZeroMatrixSize,
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("cannot parse `{text}` as an element of {ring}")]
    BadElement { ring: String, text: String },

    #[error("duplicate coordinate ({0}, {1})")]
    DuplicateCoordinate(Index, Index),
    #[error("sparse format, line {line}: {msg}")]
    SparseFormat { line: usize, msg: String },

    #[error("unbound generator `{0}`")]
    UnboundGenerator(String),
    #[error("word syntax: {0}")]
    WordSyntax(String),

    #[error("enumeration of {set} stalled: no element found within {probes} probes")]
    Stall { set: String, probes: u64 },
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("overlap set ({i}, {j}) is incomplete: {element} lies in both sets")]
    IncompleteOverlap { i: usize, j: usize, element: Index },

    #[error("preorder dsl: {0}")]
    PreorderSyntax(String),
    #[error("descriptor inconsistent: {0}")]
    Descriptor(String),

    #[error("not lower-triangular: entry at ({row}, {col})")]
    NotLowerTriangular { row: Index, col: Index },
    #[error("target outside the witness scope: entry at ({row}, {col})")]
    OutOfScope { row: Index, col: Index },
    #[error("not weakly fearing: infinitely many rows have infinite support")]
    NotWeaklyFearing,
    #[error("not fearing: some rows have infinite support")]
    NotFearing,
    #[error("witness capacity {capacity} too small, column {needed} requested")]
    Capacity { capacity: u64, needed: u64 },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
