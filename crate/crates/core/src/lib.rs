//! Exact computations on flat pseudo-Euclidean Lie algebras.

pub mod audit;
pub mod catalog;
pub mod doubleext;
pub mod error;
pub mod flatness;
pub mod format;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod metric;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod subspace;

pub use error::{Error, Result};
