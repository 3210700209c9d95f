//! Small object argument factorizations `f = q . j`.

use std::sync::Arc;

use accat::congruence::DEFAULT_CAP;
use accat::error::Error;
use accat::fincat::{FinCat, FinFunctor, Obj};
use accat::model::{soa_factorize, to_terminal};
use accat::simplicial::GeneratorSet;

fn main() -> accat::Result<()> {
    let arrow = Arc::new(FinCat::arrow());
    let point = Arc::new(FinCat::terminal());
    let cases = [
        ("arrow -> point", to_terminal(&arrow)),
        ("point -> source of arrow", FinFunctor::new(point, arrow.clone(), vec![Obj(0)], vec![arrow.id(Obj(0))])?),
    ];
    for (name, f) in cases {
        match soa_factorize(&f, GeneratorSet::J, 1, 3, DEFAULT_CAP, 2_000_000) {
            Ok(fac) => println!(
                "{name}: {} stages, {} cells, recomposes: {}",
                fac.record.stages.len(),
                fac.record.num_cells(),
                fac.recomposes_to(&f)
            ),
            Err(Error::StageBudgetExceeded { stages, partial }) => println!(
                "{name}: no lifting property after {stages} stages ({} cells, middle has {} objects)",
                partial.record.num_cells(),
                partial.record.last().num_objects()
            ),
            Err(e) if e.is_resource_cap() => println!("{name}: {e}"),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
