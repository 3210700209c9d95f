//! Integral homology of complexes and of nerves of categories.

use accat::homology::{homology, nerve_homology};
use accat::simplicial::{c_sd2, sd, SimplicialComplex};

fn main() -> accat::Result<()> {
    for n in 1..=3 {
        let sphere = SimplicialComplex::boundary(n);
        println!("boundary of simplex {n}: {}", homology(&sphere)?.lines().join(", "));
        println!("  after subdivision:    {}", homology(&sd(&sphere))?.lines().join(", "));
    }
    let horn = SimplicialComplex::horn(2, 1)?;
    let p = c_sd2(&horn).to_category();
    println!("nerve of cSd^2 of a horn: {}", nerve_homology(&p)?.lines().join(", "));
    Ok(())
}
