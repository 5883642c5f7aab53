use thiserror::Error;

/// Errors raised by the decomposition routines.
///
/// Every variant is a precondition violation on the caller's input; none of
/// them signal an internal failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("element {element} out of range for ground set of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("triple ({x}|{y}{z}) is not reflectless")]
    NotReflectless { x: usize, y: usize, z: usize },

    #[error("ground set size {size} exceeds the brute-force bound {bound}")]
    OracleBound { size: usize, bound: usize },

    #[error("set must be a non-empty proper subset of the ground set")]
    TrivialCut,

    #[error("set is not a part of the partition")]
    NotAPart,

    #[error("local congruence {found} exceeds 2")]
    LocalCongruence { found: usize },

    #[error("umodule family is not self-complemented")]
    NotSelfComplemented,

    #[error("structure is not totally decomposable")]
    NotTotallyDecomposable,

    #[error("ground set too small: need at least {needed} elements, got {size}")]
    TooSmall { needed: usize, size: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
