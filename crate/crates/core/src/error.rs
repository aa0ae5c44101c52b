use alloc::string::String;

/// Why a presentation is not (the normal form of) a GHW group.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InvalidReason {
    #[error("dimension {0} is outside the supported range")]
    Dimension(usize),
    #[error("a mask has bits beyond the dimension")]
    MaskOutOfRange,
    #[error("expected {expected} generators, found {found}")]
    HolonomyRank { expected: usize, found: usize },
    #[error("generator sign vectors are linearly dependent")]
    NotFaithful,
    #[error("-Id lies in the holonomy group")]
    ContainsMinusIdentity,
    #[error("element {flips:#b} with translation {halves:#b} has finite order")]
    Torsion { flips: u64, halves: u64 },
    #[error("the group contains a pure translation outside the lattice")]
    LatticeNotMaximal,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("generator sign vectors are linearly dependent")]
    DependentGenerators,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(InvalidReason),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {dim} exceeds the limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },
    #[error("dimension {0} is too small")]
    DimensionTooSmall(usize),
    #[error("enumeration interrupted")]
    Interrupted,
    #[error("first cohomology has a free part")]
    InfiniteH1,
    #[error("invalid reduction choice: {0}")]
    InvalidChoice(&'static str),
    #[error("reduction does not yield a GHW group: {0}")]
    ReductionNotGhw(InvalidReason),
    #[error("input is not a group of the Gamma family")]
    NotGammaFamily,
    #[error("input is not orientable")]
    NotOriented,
    #[error("no didicosm witness found")]
    NoWitness,
    #[error("no extension of the representation exists")]
    NoExtension,
    #[error("invalid representation: {0}")]
    InvalidSpec(&'static str),
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error("unknown vertex")]
    UnknownVertex,
    #[error("vertices are not connected")]
    Disconnected,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl From<InvalidReason> for Error {
    fn from(reason: InvalidReason) -> Self {
        Error::InvalidPresentation(reason)
    }
}
