//! Row-monomial matrices, Rees coordinates, wreath embeddings and the
//! finite cover construction.

mod cover;
mod matrix;
mod rees;

pub use cover::*;
pub use matrix::{RowMonomialMatrix, MAX_DIM};
pub use rees::*;

#[cfg(test)]
mod tests;
