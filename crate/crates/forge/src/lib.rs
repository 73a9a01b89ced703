//! Colored Eulerian quasisymmetric functions, the colored permutation
//! statistics they count, and executable forms of the bijections relating
//! their combinatorial models.

pub mod algebra;
pub mod bijections;
pub mod chromatic;
pub mod decval;
pub mod error;
pub mod eulerqsym;
pub mod harness;
pub mod perm;
pub mod qeuler;
pub mod report;
pub mod stats;
pub mod suites;
pub mod symfunc;

pub use error::{ForgeError, Result};
