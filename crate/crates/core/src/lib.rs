//! Finite categories, acyclic categories, congruences and colimits, and the
//! Thomason-style model structure machinery on them.

pub mod error;
pub mod acyclic;
pub mod congruence;
pub mod fincat;
pub mod homology;
pub mod simplicial;
pub mod model;

pub use error::{Error, Result};
pub mod cli;
