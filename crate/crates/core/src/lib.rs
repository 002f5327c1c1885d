//! Exact rank measures of total and partial 0-1 matrices.

pub mod bitset;
pub mod composed;
pub mod data;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod nonneg;
pub mod rect;
pub mod report;
pub mod sampling;
pub mod solve;
pub mod suite;

pub use error::{Error, Result};
pub use matrix::{CellSet, Entry, PartialMatrix};
pub use rect::Rect;
