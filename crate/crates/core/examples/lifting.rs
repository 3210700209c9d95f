//! Right lifting properties against the generating sets.

use std::sync::Arc;

use accat::fincat::{FinCat, FinFunctor, Obj, DEFAULT_BUDGET};
use accat::model::{has_rlp, to_terminal};
use accat::simplicial::GeneratorSet;

fn main() -> accat::Result<()> {
    let arrow = Arc::new(FinCat::arrow());
    let point = Arc::new(FinCat::terminal());
    let to_point = to_terminal(&arrow);
    let into_source = FinFunctor::new(point, arrow.clone(), vec![Obj(0)], vec![arrow.id(Obj(0))])?;
    for (name, g) in [("arrow -> point", &to_point), ("point -> source of arrow", &into_source)] {
        for set in [GeneratorSet::I, GeneratorSet::J] {
            let v = has_rlp(g, set, 1, DEFAULT_BUDGET)?;
            match &v.counterexample {
                None => println!("{name}: lifts against {set:?} up to dimension 1"),
                Some((gen, _)) => println!("{name}: no lift against {gen}"),
            }
        }
    }
    Ok(())
}
