//! Executable finite machinery for irreducible sofic shifts.

pub mod cli;
pub mod entropy;
pub mod error;
pub mod finsemi;
pub mod idempotent;
pub mod shiftspace;
pub mod syntactic;
pub mod wreath;

pub use error::{Error, Result};

/// A word over an alphabet, as a sequence of letter indices.
pub type Word = Vec<usize>;
