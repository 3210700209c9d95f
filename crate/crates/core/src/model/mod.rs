//! Lifting problems, the right lifting property against the generating sets,
//! the small object argument and smallness witnesses.

mod lifting;
mod rlp;
mod smallness;
mod soa;

pub use lifting::{enumerate_squares, find_lift, to_terminal, LiftingSquare};
pub use rlp::{lifting_counterexample, naive_counterexample};
pub use smallness::{chain_diagram, smallness_witness, SmallnessVerdict};
pub use soa::{default_max_dim, has_rlp, soa_factorize, AttachedCell, CellRecord, Factorization, RlpVerdict, Stage};

/// Default cap on small object argument stages.
pub const DEFAULT_MAX_STAGES: usize = 16;

#[cfg(test)]
mod tests;
