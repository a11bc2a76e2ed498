//! Exact free-fermion solution of the one-dimensional compass (XX–YY) chain
//! in a transverse field, with the observables used to locate and
//! characterise its quantum phase transition, and a brute-force exact
//! diagonalisation oracle for small chains.

pub mod correlations;
pub mod ed;
pub mod error;
pub mod model;
pub mod observables;
pub mod scaling;
pub mod solver;

pub use error::{Error, Result};
pub use model::{momentum_grid, Boundary, ModelParams, Momentum, MomentumGrid};
