//! Exact linear algebra over the rationals.
//!
//! Everything here is deterministic: elimination always takes the leftmost
//! pivot and normalizes it to 1, so bases and particular solutions are
//! canonical and identical across runs.

mod matrix;
mod rational;
mod subspace;

pub use matrix::{ExactMatrix, Rref, Solution};
pub use rational::{ParseRationalError, Rational};
pub use subspace::{RowReducer, Subspace};
