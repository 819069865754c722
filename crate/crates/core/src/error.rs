use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("rank {rank} is outside the supported range [{min}, {max}]")]
    RankOutOfRange { rank: u32, min: u32, max: u32 },

    #[error("invalid multiplicities for rank {rank} (r mod 8 = {class}): {reason}")]
    IncompatibleMultiplicities { rank: u32, class: u32, reason: String },

    #[error("degenerate Gram matrix: spanning set is linearly dependent")]
    DegenerateGram,

    #[error("not a basis: {0}")]
    NotABasis(String),

    #[error("d_M is undefined for rank {rank} (r mod 8 = {class}): the centralizer is u(m)")]
    UndefinedMaximalSubalgebra { rank: u32, class: u32 },

    #[error("construction check failed: {0}")]
    Construction(String),

    #[error("{0}")]
    Invalid(String),
}
