//! Generalized congruences, quotient categories and colimits.

mod colimits;
mod filtered;
mod saturate;

pub use colimits::{coequalizer, induced_functor, colimit_presentation, finite_colimit, pushout, sieve_pushout_direct, Colimit, DiagramInCat, Pushout};
pub use filtered::{filtered_colimit, is_filtered};
pub use saturate::{object_classes, quotient, quotient_universal_check, saturate, CongruencePresentation, RelationPair, DEFAULT_CAP};
pub(crate) use saturate::UnionFind;
