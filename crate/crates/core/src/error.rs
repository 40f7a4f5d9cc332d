use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    InvalidParts(Vec<usize>),
    #[error("{partition} is not {p}-regular")]
    NotRegular { partition: Partition, p: usize },
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("p = {0} is not supported here (need an odd prime)")]
    UnsupportedPrime(usize),
    #[error("cannot compare partitions of different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("bead count {beads} is smaller than the height {height}")]
    TooFewBeads { beads: usize, height: usize },
    #[error("invalid abacus: {0}")]
    InvalidAbacus(String),
    #[error("runner {runner} would need a negative bead count")]
    NegativeBeadCount { runner: usize },
    #[error("{partition} is not a {p}-core")]
    NotCore { partition: Partition, p: usize },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no valid embedding: {0}")]
    NoEmbedding(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
