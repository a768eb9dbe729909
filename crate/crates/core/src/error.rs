use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse type label {label:?} at position {pos}: {msg}")]
    LabelParse { label: String, pos: usize, msg: String },
    #[error("unsupported affine type {0}")]
    UnknownType(String),
    #[error("rank {rank} is out of range for {family}: {msg}")]
    RankOutOfRange { family: String, rank: usize, msg: String },
    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("weight has {got} coordinates, expected {expected}")]
    WeightLength { got: usize, expected: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("level {0} is not positive")]
    NonPositiveLevel(i64),
    #[error("series not invertible: {0}")]
    NotInvertible(String),
    #[error("input is not Weyl-invariant: {0}")]
    NotInvariant(String),
    #[error("truncation order must be at least 1, got {0}")]
    BadTruncation(i64),
    #[error("norm of P({weight}) has no unit term at truncation {trunc}")]
    DegenerateNorm { weight: String, trunc: i64 },
    #[error("shift {0} is not in the grading lattice")]
    BadShift(String),
    #[error("inconsistent multiplicity at {weight}, u^{exp}: {value}")]
    Inconsistent { weight: String, exp: i64, value: String },
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
