//! Exact algebra for exponential-algebraic structures: the predimension
//! calculus on finite configurations, normal and free pairs of varieties,
//! and the Gröbner, lattice and cyclotomic machinery underneath.

pub mod algebra;
mod error;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod pairs;
pub mod predim;

pub use error::{Error, Result};
