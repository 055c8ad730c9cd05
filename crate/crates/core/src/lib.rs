//! Exact computations with periodic gradings, twisted loop algebras and their
//! Poisson-commutative subalgebras.

pub mod error;
pub mod harness;
pub mod invariants;
pub mod liealg;
pub mod linalg;
pub mod scalars;
pub mod sympoly;
pub mod twistloop;

pub use error::{Error, Result};
