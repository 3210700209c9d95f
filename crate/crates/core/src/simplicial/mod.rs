//! Ordered simplicial complexes, bounded simplicial sets, subdivision, the
//! nerve and fundamental category, and the generating inclusions.

mod complex;
mod generators;
mod maps;
mod poset;
mod sset;

pub use complex::SimplicialComplex;
pub use generators::{generators_up_to, thol_generator, Generator, GeneratorSet};
pub use maps::{enumerate_simplicial_maps, ex_bounded, ex_compatible_families, ExSimplices};
pub use poset::{c_sd2, face_poset, order_complex, poset_functor, sd, Poset};
pub use sset::{count_maps_into_nerve, longest_chain, nerve, tau1, BoundedSSet, FormalSimplex};
