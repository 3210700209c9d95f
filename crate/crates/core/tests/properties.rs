//! Property tests over seeded random instances.

use std::sync::Arc;

use accat::acyclic::reflect;
use accat::cli::generate::{random_acyclic, random_category, random_complex, random_sieve_span, SuiteConfig};
use accat::cli::io::CategoryJson;
use accat::congruence::{pushout, saturate, sieve_pushout_direct, RelationPair, DEFAULT_CAP};
use accat::fincat::{
    are_isomorphic, coproduct, count_functors, is_acyclic, is_sieve, FinCat, SieveMode, DEFAULT_BUDGET,
};
use accat::homology::homology;
use accat::simplicial::{nerve, sd, tau1};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cfg() -> SuiteConfig {
    SuiteConfig::default()
}

fn iso(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    are_isomorphic(a, b, DEFAULT_BUDGET).unwrap().is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflection_is_acyclic_and_idempotent(seed in any::<u64>()) {
        let c = Arc::new(random_category(&mut rng(seed), &cfg()));
        let r = reflect(&c).unwrap();
        prop_assert!(is_acyclic(&r.quotient));
        let again = reflect(&r.quotient).unwrap();
        prop_assert!(again.unit.is_isomorphism());
        prop_assert_eq!(r.unit.is_isomorphism(), is_acyclic(&c));
    }

    #[test]
    fn sieve_pushouts_agree_with_direct_construction(seed in any::<u64>()) {
        let (i, f) = random_sieve_span(&mut rng(seed), &cfg());
        let p = pushout(&i, &f, DEFAULT_CAP).unwrap();
        let d = sieve_pushout_direct(&i, &f).unwrap();
        prop_assert!(is_acyclic(&p.category));
        prop_assert!(iso(&p.category, &d.category));
        prop_assert!(p.right.is_injective_on_objects() && p.right.is_full() && p.right.is_faithful());
    }

    #[test]
    fn coproduct_injections_are_sieves_and_cosieves(seeds in proptest::collection::vec(any::<u64>(), 0..4)) {
        let parts: Vec<Arc<FinCat>> = seeds.iter().map(|&s| Arc::new(random_acyclic(&mut rng(s), 3, 5))).collect();
        let cp = coproduct(&parts);
        prop_assert_eq!(cp.category.num_objects(), parts.iter().map(|p| p.num_objects()).sum::<usize>());
        for j in &cp.injections {
            prop_assert!(is_sieve(j, SieveMode::Sieve).unwrap());
            prop_assert!(is_sieve(j, SieveMode::Cosieve).unwrap());
        }
    }

    #[test]
    fn functor_counts_are_invariant_under_opposites(a in any::<u64>(), b in any::<u64>()) {
        let c = Arc::new(random_acyclic(&mut rng(a), 3, 4));
        let d = Arc::new(random_category(&mut rng(b), &SuiteConfig { max_objects: 3, max_morphisms: 5, ..cfg() }));
        let n = count_functors(&c, &d, DEFAULT_BUDGET).unwrap();
        let (cop, dop) = (Arc::new(c.opposite()), Arc::new(d.opposite()));
        prop_assert_eq!(n, count_functors(&cop, &dop, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn fundamental_category_of_nerve_recovers_acyclic_categories(seed in any::<u64>()) {
        let c = Arc::new(random_acyclic(&mut rng(seed), 4, 8));
        let t = tau1(&nerve(&c, Some(2)).unwrap(), DEFAULT_CAP).unwrap();
        prop_assert!(iso(&t, &c));
    }

    #[test]
    fn empty_congruence_gives_an_isomorphic_quotient(seed in any::<u64>()) {
        let c = Arc::new(random_category(&mut rng(seed), &cfg()));
        let p = saturate(&c, &RelationPair::new(), DEFAULT_CAP).unwrap();
        prop_assert!(p.projection.is_isomorphism());
    }

    #[test]
    fn subdivision_preserves_homology(seed in any::<u64>()) {
        let k = random_complex(&mut rng(seed), 7, 3);
        let h = homology(&k).unwrap();
        prop_assert_eq!(&h, &homology(&sd(&k)).unwrap());
        prop_assert_eq!(h.euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn category_json_round_trips(seed in any::<u64>()) {
        let c = random_category(&mut rng(seed), &cfg());
        let text = serde_json::to_string(&CategoryJson::from_category(&c)).unwrap();
        let back: CategoryJson = serde_json::from_str(&text).unwrap();
        let d = back.to_category().unwrap();
        prop_assert!(iso(&Arc::new(c.clone()), &Arc::new(d.clone())));
        prop_assert_eq!(c.object_names(), d.object_names());
    }
}
