use thiserror::Error;

use crate::strip::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed strip description: {0}")]
    Malformed(String),

    #[error("unknown fragment shape {0:?} (expected one of W, N, R, L)")]
    UnknownShape(char),

    #[error("strip length must be at least 1, got {0}")]
    InvalidLength(i64),

    #[error("invalid strip: {0}")]
    InvalidStrip(ValidationReport),

    #[error("non-Kekuléan: ord(i_{interface}) = {order}")]
    NonKekulean { interface: usize, order: i64 },

    #[error("{what}: size {actual} exceeds guard {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("map is not strictly order-preserving: {0}")]
    NotStrictlyOrderPreserving(String),

    #[error("labeling is not natural: {0}")]
    NotNatural(String),

    #[error("word is not a linear extension: {0}")]
    NotLinearExtension(String),

    #[error("not a Kekulé structure: {0}")]
    NotKekule(String),
}
