//! Pushout of acyclic categories along a sieve, computed twice: through a
//! congruence on the coproduct and through the direct construction.

use std::sync::Arc;

use accat::cli::io::category_value;
use accat::congruence::{pushout, sieve_pushout_direct, DEFAULT_CAP};
use accat::fincat::{are_isomorphic, full_subcategory, is_acyclic, FinCat, FinFunctor, Obj, DEFAULT_BUDGET};

fn main() -> accat::Result<()> {
    // B = 0 -> 1 -> 2, A = {0} is a sieve in B.
    let b = Arc::new(FinCat::chain(3));
    let (a, i) = full_subcategory(&b, &[Obj(0)]);
    // C = a -> b, with the point sent to the target b.
    let c = Arc::new(FinCat::arrow());
    let f = FinFunctor::new(a, c.clone(), vec![c.object_by_name("b").expect("b")], vec![c.id(Obj(1))])?;

    let via_congruence = pushout(&i, &f, DEFAULT_CAP)?;
    let direct = sieve_pushout_direct(&i, &f)?;
    let p = &via_congruence.category;
    println!("pushout: {} objects, {} morphisms, acyclic: {}", p.num_objects(), p.num_morphisms(), is_acyclic(p));
    println!("{}", category_value(p));
    let iso = are_isomorphic(p, &direct.category, DEFAULT_BUDGET)?;
    println!("agrees with the direct construction: {}", iso.is_some());
    Ok(())
}
