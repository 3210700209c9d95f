//! Acyclic reflection: inverses and endomorphisms collapse to identities.

use std::sync::Arc;

use accat::acyclic::reflect;
use accat::fincat::{FinCat, Mor, Obj};

fn main() -> accat::Result<()> {
    // Walking isomorphism a <-> b.
    let iso = FinCat::build(
        vec!["a".into(), "b".into()],
        vec![("f".into(), Obj(0), Obj(1)), ("g".into(), Obj(1), Obj(0))],
        |x, y| match (x.0, y.0) {
            (2, 3) => Some(Mor(0)),
            (3, 2) => Some(Mor(1)),
            _ => None,
        },
    )?;
    // A chain with a non-trivial endomorphism e on its source, e;e = id.
    let looped = FinCat::build(
        vec!["x".into(), "y".into()],
        vec![("e".into(), Obj(0), Obj(0)), ("u".into(), Obj(0), Obj(1))],
        |p, q| match (p.0, q.0) {
            (2, 2) => Some(Mor(0)),
            (2, 3) => Some(Mor(3)),
            _ => None,
        },
    )?;
    for (name, c) in [("walking isomorphism", iso), ("looped arrow", looped), ("chain of 3", FinCat::chain(3))] {
        let c = Arc::new(c);
        let r = reflect(&c)?;
        println!(
            "{name}: {} objects / {} morphisms -> {} objects / {} morphisms, unit iso: {}",
            c.num_objects(),
            c.num_morphisms(),
            r.quotient.num_objects(),
            r.quotient.num_morphisms(),
            r.unit.is_isomorphism()
        );
    }
    Ok(())
}
