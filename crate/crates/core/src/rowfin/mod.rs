//! Finitely supported vectors and lazy row-finite matrices.

mod map;
pub mod random;
pub mod sparse;
mod vec;

pub use map::{DenseWindow, RowDiscrepancy, RowFiniteMap, Window};
pub use vec::FinVec;
