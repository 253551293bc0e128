//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by this crate. Arithmetic never wraps: any coefficient
/// overflow surfaces as [`Error::Overflow`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in exact integer computation")]
    Overflow,

    #[error("universe of {size} elements exceeds the enumeration limit of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },

    #[error("universes differ: {left} vs {right} elements")]
    UniverseMismatch { left: usize, right: usize },

    #[error("a universe may hold at most 64 elements, got {0}")]
    TooManyElements(usize),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("mask bits extend past a universe of {universe_size} elements")]
    MaskOutOfRange { universe_size: usize },

    #[error("edge `{label}` must span at least two distinct vertices")]
    EdgeTooSmall { label: String },

    #[error("edges `{first}` and `{second}` have the same vertex set")]
    DuplicateEdge { first: String, second: String },

    #[error("operation requires an ordinary graph, but edge `{label}` has {cardinality} vertices")]
    NotAGraph { label: String, cardinality: usize },

    #[error("broken pair has overlapping B and B*")]
    OverlappingPair,

    #[error("broken pair has an empty B*")]
    EmptyAbsorber,

    #[error("pair {pair} fails the absorption check")]
    InvalidPair { pair: String },

    #[error("subset {subset} is not excluded by the family")]
    NotInFamily { subset: String },

    #[error("not a permutation of the universe: {detail}")]
    InvalidOrder { detail: String },

    #[error("family member {b_set} has no strict upper bounds in the given order")]
    NoUpperBounds { b_set: String },
}

pub type Result<T> = std::result::Result<T, Error>;
