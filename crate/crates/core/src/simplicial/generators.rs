use std::sync::Arc;

use super::complex::SimplicialComplex;
use super::poset::{c_sd2, poset_functor, Poset};
use crate::error::{Error, Result};
use crate::fincat::FinFunctor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorSet {
    /// Boundary inclusions.
    I,
    /// Horn inclusions.
    J,
}

impl std::str::FromStr for GeneratorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<GeneratorSet> {
        match s {
            "I" | "i" => Ok(GeneratorSet::I),
            "J" | "j" => Ok(GeneratorSet::J),
            _ => Err(Error::InvalidGenerator(format!("unknown generating set `{s}`"))),
        }
    }
}

/// An inclusion `cSd^2 A -> cSd^2 Delta^n` of posets, as a functor between
/// their categories.
#[derive(Clone, Debug)]
pub struct Generator {
    pub set: GeneratorSet,
    pub n: usize,
    pub horn: Option<usize>,
    pub domain: Poset,
    pub codomain: Poset,
    pub inclusion: FinFunctor,
}

impl Generator {
    pub fn name(&self) -> String {
        match self.horn {
            Some(k) => format!("J({},{k})", self.n),
            None => format!("I({})", self.n),
        }
    }
}

/// The generator for `set` in dimension `n`; horns need `1 <= n` and
/// `k <= n`.
pub fn thol_generator(set: GeneratorSet, n: usize, k: Option<usize>) -> Result<Generator> {
    let sub = match (set, k) {
        (GeneratorSet::I, None) => SimplicialComplex::boundary(n),
        (GeneratorSet::J, Some(k)) => SimplicialComplex::horn(n, k)?,
        (GeneratorSet::I, Some(_)) => return Err(Error::InvalidGenerator("I takes no horn index".into())),
        (GeneratorSet::J, None) => return Err(Error::InvalidGenerator("J needs a horn index".into())),
    };
    let domain = c_sd2(&sub);
    let codomain = c_sd2(&SimplicialComplex::standard(n));
    let map: Vec<usize> = domain
        .elements()
        .iter()
        .map(|e| codomain.position(e).expect("subdivision is natural for inclusions"))
        .collect();
    let inclusion = poset_functor(&Arc::new(domain.to_category()), &Arc::new(codomain.to_category()), &map)?;
    Ok(Generator {
        set,
        n,
        horn: k,
        domain,
        codomain,
        inclusion,
    })
}

/// All generators of `set` with `n <= max_dim`, by dimension then horn index.
pub fn generators_up_to(set: GeneratorSet, max_dim: usize) -> Result<Vec<Generator>> {
    let mut out = Vec::new();
    for n in 0..=max_dim {
        match set {
            GeneratorSet::I => out.push(thol_generator(set, n, None)?),
            GeneratorSet::J if n >= 1 => {
                for k in 0..=n {
                    out.push(thol_generator(set, n, Some(k))?);
                }
            }
            GeneratorSet::J => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{is_dwyer, is_sieve, SieveMode};

    #[test]
    fn low_dimensional_generators() {
        let g = thol_generator(GeneratorSet::I, 0, None).unwrap();
        assert_eq!((g.domain.len(), g.codomain.len()), (0, 1));
        let g = thol_generator(GeneratorSet::I, 1, None).unwrap();
        assert_eq!((g.domain.len(), g.codomain.len()), (2, 5));
        assert!(g.inclusion.source().num_non_identity() == 0);
        let g = thol_generator(GeneratorSet::I, 2, None).unwrap();
        assert_eq!(g.codomain.len(), 25);
        assert!(thol_generator(GeneratorSet::J, 0, Some(0)).is_err());
        assert!(thol_generator(GeneratorSet::J, 2, Some(3)).is_err());
    }

    #[test]
    fn generators_are_dwyer_sieves_up_to_dimension_two() {
        for g in generators_up_to(GeneratorSet::I, 2).unwrap().into_iter().chain(generators_up_to(GeneratorSet::J, 2).unwrap()) {
            assert!(is_sieve(&g.inclusion, SieveMode::Sieve).unwrap(), "{}", g.name());
            assert!(is_dwyer(&g.inclusion, 10_000_000).unwrap().is_dwyer(), "{}", g.name());
        }
    }
}
