pub mod atlas;
pub mod bounds;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod json;
pub mod linalg;
pub mod normalizer;
pub mod structure;

pub use error::{Error, Result};
