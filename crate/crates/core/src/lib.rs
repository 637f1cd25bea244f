//! Exact computations with graded Clifford algebras and their quadric quotients.

pub mod classify;
pub mod clifford;
pub mod error;
pub mod geometry;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod polymatrix;
pub mod quadratic;
pub mod scalar;
pub mod smith;
pub mod unipoly;

pub use error::{Error, Result};
