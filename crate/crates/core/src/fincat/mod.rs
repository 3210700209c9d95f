//! Finite categories given by explicit composition tables, functors between
//! them, and the searches built on top.

mod category;
mod enumerate;
mod functor;
mod ops;
mod predicates;
mod search;

pub use category::{identity_name, FinCat, Mor, MorphismData, Obj};
pub use enumerate::{enumerate_categories, EnumerationBounds};
pub use functor::{same_category, FinFunctor};
pub use ops::{coproduct, full_subcategory, image_factorisation, smallness_bound, Coproduct};
pub use predicates::{
    cosieve_generated, dwyer_on_cosieve, is_acyclic, is_dwyer, is_sieve, DwyerVerdict, DwyerWitness, NotDwyerReason,
    SieveMode,
};
pub use search::{are_isomorphic, count_functors, enumerate_functors, FunctorSearch, DEFAULT_BUDGET};
