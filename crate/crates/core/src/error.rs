use std::io;

use thiserror::Error;

use crate::bwt::Phase;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("collection has no documents")]
    EmptyCollection,

    #[error("document {doc} contains reserved byte {byte:#04x} at offset {offset}")]
    ReservedByteInDocument { doc: usize, offset: usize, byte: u8 },

    #[error("position {pos} out of range for text of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("prefix length {prefix} exceeds bitvector universe {universe}")]
    PrefixOutOfRange { prefix: usize, universe: usize },

    #[error("naive oracle limited to {cap} symbols, text has {len}")]
    OracleCapExceeded { len: usize, cap: usize },

    #[error("array is not a permutation of 0..{len}")]
    NotAPermutation { len: usize },

    #[error("work array is in phase {found:?}, expected {expected:?}")]
    WrongPhase { expected: Phase, found: Phase },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("bitvector universe {universe} does not match text length {len}")]
    UniverseMismatch { universe: usize, len: usize },

    #[error("LF walk closed after {steps} of {len} steps")]
    CycleTooShort { steps: usize, len: usize },

    #[error("suffix array is malformed: traversal revisited cell {cell} at step {step}")]
    MalformedSa { cell: usize, step: usize },

    #[error("index {width}-bit width cannot hold text length {len}")]
    WidthTooNarrow { width: u32, len: usize },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
