use thiserror::Error;

use crate::flagx::ExtResult;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight ({a},{b}): first entry must be >= second")]
    WeightOrder { a: i64, b: i64 },

    #[error("Grassmannian Gr(2,{0}) is not supported (need N >= 3)")]
    BadRank(usize),

    #[error("weight sequence is not nonincreasing: {0:?}")]
    NotDominant(Vec<i64>),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("K-theory basis for N={n} failed validation: {reason}")]
    BasisInvalid { n: usize, reason: String },

    #[error("block {block} is undefined for the given parameters: {reason}")]
    BlockRange { block: String, reason: String },

    #[error("entry {0} is an opaque complement; no Ext queries are possible")]
    OpaqueEntry(usize),

    #[error("index {index} out of range for collection of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("vanishing of RHom({from}, {to}) not established: {ext}")]
    VanishingNotEstablished { from: String, to: String, ext: ExtResult },

    #[error("RHom({from}, {to}) does not vanish: {ext}")]
    VanishingFalse { from: String, to: String, ext: ExtResult },

    #[error("RHom({from}, {to}) is not one-dimensional in a single degree: {ext}")]
    NotSimple { from: String, to: String, ext: ExtResult },

    #[error("no rule identifies the cone of {from} -> {to} as a pure object")]
    NoRuleMatch { from: String, to: String },

    #[error("K-class mismatch after mutation of ({from}, {to}) into {result}")]
    KClassMismatch { from: String, to: String, result: String },

    #[error("Serre twist range {start}..{end} must be a nonempty tail of the collection (len {len})")]
    SerreRange { start: usize, end: usize, len: usize },

    #[error("expectation failed at {label}: expected [{expected}], found [{found}]")]
    ExpectationFailed { label: String, expected: String, found: String },

    #[error("out of stated range: {0}")]
    OutOfRange(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
