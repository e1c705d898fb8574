use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("rank range {start}..{end} out of bounds for class of size {size}")]
    RangeOutOfBounds { start: u128, end: u128, size: u128 },

    #[error("invalid combinatorial map: {0}")]
    InvalidMap(String),

    #[error("invalid hypermap: {0}")]
    InvalidHypermap(String),

    #[error("not bipartite")]
    NotBipartite,

    #[error("genus 0 handled as special case")]
    GenusZero,

    #[error("edge count {edges} outside [{lo}, {hi}] for genus {genus}")]
    EdgesOutOfRange {
        genus: u32,
        edges: usize,
        lo: usize,
        hi: usize,
    },

    #[error("brute force over S_{max_edges} x S_{max_edges} refused: {pairs} pairs (limit is E <= {limit})")]
    BruteForceTooLarge {
        max_edges: usize,
        pairs: u128,
        limit: usize,
    },

    #[error("capacity exhausted for triple {key}: {reason}")]
    Capacity { key: String, reason: String },

    #[error("Frobenius count for {0} is not an integer")]
    NonIntegralCount(String),

    #[error("missing input for genus {0}")]
    MissingGenus(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
