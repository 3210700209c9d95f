//! Subdivision, nerves and the fundamental category.

use accat::congruence::DEFAULT_CAP;
use accat::fincat::FinCat;
use accat::simplicial::{c_sd2, nerve, sd, tau1, BoundedSSet, SimplicialComplex};

fn main() -> accat::Result<()> {
    let d2 = SimplicialComplex::standard(2);
    println!("sd(simplex 2) f-vector: {:?}", sd(&d2).f_vector());
    for n in 0..=2 {
        println!("cSd^2 of simplex {n}: {} elements", c_sd2(&SimplicialComplex::standard(n)).len());
    }

    let c = FinCat::chain(3);
    let x = nerve(&c, None)?;
    let counts: Vec<usize> = (0..x.labels.len()).map(|n| x.count(n)).collect();
    println!("nerve of the chain 0 < 1 < 2: nondegenerate simplices per dimension {counts:?}");

    let circle = SimplicialComplex::boundary(2);
    let t = tau1(&BoundedSSet::from_complex(&circle), DEFAULT_CAP)?;
    println!("tau1 of the boundary of a triangle: {} objects, {} morphisms", t.num_objects(), t.num_morphisms());
    Ok(())
}
