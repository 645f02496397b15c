use thiserror::Error;

use crate::instance::Color;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {0} has an empty color list")]
    EmptyList(usize),
    #[error("vertex {vertex} lists undeclared color {color}")]
    UnknownColor { vertex: usize, color: Color },
    #[error("expected {expected} lists, got {got}")]
    ListCount { expected: usize, got: usize },
    #[error("LP numerical failure: {0}")]
    NumericalFailure(String),
    #[error("invalid column: {0}")]
    InvalidColumn(String),
    #[error("column already in pool: {0}")]
    DuplicateColumn(String),
    #[error("reconstruction produced an invalid coloring: {0}")]
    ReconstructionBug(String),
    #[error("invalid incumbent candidate: {0}")]
    InvalidCandidate(String),
    #[error("instance has {n} vertices, oracle cap is {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
