use std::sync::Arc;

use super::*;
use crate::congruence::DEFAULT_CAP;
use crate::error::Error;
use crate::fincat::{FinCat, FinFunctor, Mor, Obj};
use crate::simplicial::{c_sd2, generators_up_to, GeneratorSet, SimplicialComplex};

const BUDGET: u64 = 10_000_000;

fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn point() -> Arc<FinCat> {
    arc(FinCat::terminal())
}

fn arrow_at(end: usize) -> FinFunctor {
    FinFunctor::new(point(), arc(FinCat::arrow()), vec![Obj(end)], vec![Mor(end)]).unwrap()
}

#[test]
fn lift_through_isomorphisms() {
    let c = arc(FinCat::arrow());
    let id = FinFunctor::identity(c.clone());
    let g = to_terminal(&c);
    let sq = LiftingSquare::new(id.clone(), g.clone(), id.clone(), g.clone()).unwrap();
    let h = find_lift(&sq, BUDGET).unwrap().unwrap();
    assert!(sq.is_lift(&h));
    assert_eq!(h, id);

    // g an isomorphism: the lift is g^-1 . bottom.
    let f = arrow_at(1);
    let iso = FinFunctor::identity(c.clone());
    let sq = LiftingSquare::new(f.clone(), iso.clone(), f.clone(), iso.clone()).unwrap();
    assert_eq!(find_lift(&sq, BUDGET).unwrap().unwrap(), iso);
}

#[test]
fn empty_to_point_against_two_points() {
    let f = FinFunctor::from_empty(point());
    let two = arc(FinCat::discrete(["u0", "u1"]));
    let g = to_terminal(&two);
    let sq = LiftingSquare::new(f, g.clone(), FinFunctor::from_empty(two.clone()), FinFunctor::identity(point())).unwrap();
    let h = find_lift(&sq, BUDGET).unwrap().unwrap();
    assert_eq!(h.obj(Obj(0)), Obj(0));
    assert_eq!(enumerate_squares(&sq.left, &g, BUDGET).unwrap().len(), 1);
}

#[test]
fn non_commuting_square_is_rejected() {
    let f = arrow_at(0);
    let c = arc(FinCat::arrow());
    let id = FinFunctor::identity(c.clone());
    let err = LiftingSquare::new(f.clone(), id.clone(), arrow_at(1), id).unwrap_err();
    assert!(matches!(err, Error::NonCommutingSquare));
}

#[test]
fn isomorphisms_have_every_lifting_property() {
    let c = arc(FinCat::chain(3));
    let id = FinFunctor::identity(c);
    for set in [GeneratorSet::I, GeneratorSet::J] {
        assert!(has_rlp(&id, set, 2, BUDGET).unwrap().holds);
    }
}

#[test]
fn subdivided_interval_to_point_lifts_horns() {
    let p = arc(c_sd2(&SimplicialComplex::standard(1)).to_category());
    let g = to_terminal(&p);
    let v = has_rlp(&g, GeneratorSet::J, 1, BUDGET).unwrap();
    assert!(v.holds);
    for gen in generators_up_to(GeneratorSet::J, 1).unwrap() {
        assert!(naive_counterexample(&gen.inclusion, &g, BUDGET).unwrap().is_none());
    }
}

#[test]
fn point_into_two_points_fails_boundary_lifting() {
    let two = arc(FinCat::discrete(["a", "b"]));
    let g = FinFunctor::new(point(), two, vec![Obj(0)], vec![Mor(0)]).unwrap();
    assert!(!has_rlp(&g, GeneratorSet::I, 0, BUDGET).unwrap().holds);
    let v = has_rlp(&g, GeneratorSet::I, 1, BUDGET).unwrap();
    let (name, sq) = v.counterexample.unwrap();
    assert_eq!(name, "I(0)");
    assert!(find_lift(&sq, BUDGET).unwrap().is_none());
}

/// Small functors used to compare the memoized check with plain enumeration.
fn sample_maps() -> Vec<FinFunctor> {
    let arrow = arc(FinCat::arrow());
    let chain = arc(FinCat::chain(3));
    let two = arc(FinCat::discrete(["a", "b"]));
    let parallel = arc(
        FinCat::build(
            vec!["x".into(), "y".into()],
            vec![("u".into(), Obj(0), Obj(1)), ("v".into(), Obj(0), Obj(1))],
            |_, _| None,
        )
        .unwrap(),
    );
    vec![
        to_terminal(&arrow),
        to_terminal(&two),
        to_terminal(&parallel),
        arrow_at(0),
        arrow_at(1),
        FinFunctor::new(two.clone(), arrow.clone(), vec![Obj(0), Obj(1)], vec![Mor(0), Mor(1)]).unwrap(),
        FinFunctor::new(arrow.clone(), chain.clone(), vec![Obj(0), Obj(2)], vec![Mor(0), Mor(2), chain.hom(Obj(0), Obj(2))[0]]).unwrap(),
        FinFunctor::new(parallel.clone(), arrow.clone(), vec![Obj(0), Obj(1)], vec![Mor(0), Mor(1), Mor(2), Mor(2)]).unwrap(),
        FinFunctor::from_empty(arrow.clone()),
    ]
}

#[test]
fn memoized_check_agrees_with_enumeration() {
    let gens: Vec<_> = generators_up_to(GeneratorSet::I, 1)
        .unwrap()
        .into_iter()
        .chain(generators_up_to(GeneratorSet::J, 2).unwrap())
        .collect();
    for g in sample_maps() {
        for gen in &gens {
            if gen.n == 2 && g.target().num_objects() > 2 {
                continue;
            }
            let fast = lifting_counterexample(&gen.inclusion, &g, BUDGET).unwrap();
            let slow = naive_counterexample(&gen.inclusion, &g, BUDGET).unwrap();
            assert_eq!(fast.is_some(), slow.is_some(), "{} against {:?}", gen.name(), g.obj_map());
            if let Some(sq) = fast {
                assert!(find_lift(&sq, BUDGET).unwrap().is_none());
            }
        }
    }
}

#[test]
fn factorization_of_a_map_with_the_property_is_trivial() {
    let id = FinFunctor::identity(arc(FinCat::arrow()));
    let fac = soa_factorize(&id, GeneratorSet::J, 2, 4, DEFAULT_CAP, BUDGET).unwrap();
    assert!(fac.complete);
    assert!(fac.record.stages.is_empty());
    assert_eq!(fac.q, id);
}

#[test]
fn empty_to_point_needs_one_cell() {
    let f = FinFunctor::from_empty(point());
    let fac = soa_factorize(&f, GeneratorSet::I, 0, 4, DEFAULT_CAP, BUDGET).unwrap();
    assert_eq!(fac.record.stages.len(), 1);
    assert_eq!(fac.record.stages[0].cells[0].generator, "I(0)");
    assert!(fac.q.is_isomorphism());
    assert!(fac.recomposes_to(&f));
    fac.record.validate(DEFAULT_CAP).unwrap();
}

#[test]
fn fold_of_two_points_against_boundaries() {
    let two = arc(FinCat::discrete(["a", "b"]));
    let f = to_terminal(&two);
    let fac = soa_factorize(&f, GeneratorSet::I, 1, 8, DEFAULT_CAP, BUDGET).unwrap();
    assert!(fac.complete);
    assert!(fac.recomposes_to(&f));
    fac.record.validate(DEFAULT_CAP).unwrap();
    assert!(fac.record.num_cells() > 0);
    for gen in generators_up_to(GeneratorSet::I, 1).unwrap() {
        assert!(naive_counterexample(&gen.inclusion, &fac.q, BUDGET).unwrap().is_none(), "{}", gen.name());
    }
    for stage in &fac.record.stages {
        assert!(crate::fincat::is_acyclic(&stage.category));
    }
    // Running again attaches nothing.
    let again = soa_factorize(&fac.q, GeneratorSet::I, 1, 8, DEFAULT_CAP, BUDGET).unwrap();
    assert!(again.record.stages.is_empty());
}

#[test]
fn stage_budget_returns_the_partial_record() {
    let f = FinFunctor::from_empty(point());
    match soa_factorize(&f, GeneratorSet::I, 0, 0, DEFAULT_CAP, BUDGET) {
        Err(Error::StageBudgetExceeded { stages, partial }) => {
            assert_eq!(stages, 0);
            assert!(!partial.complete);
            assert!(partial.recomposes_to(&f));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn smallness_examples() {
    let arrow = arc(FinCat::arrow());
    let id = FinFunctor::identity(arrow.clone());
    let v = smallness_witness(&point(), &[arrow.clone(), arrow.clone(), arrow.clone()], &[id.clone(), id], DEFAULT_CAP, BUDGET).unwrap();
    assert!(v.bijective);
    assert_eq!((v.colimit_of_homs, v.homs_into_colimit), (2, 2));

    let chain = arc(FinCat::chain(3));
    let j0 = arrow_at(0);
    let j1 = FinFunctor::new(arrow.clone(), chain.clone(), vec![Obj(0), Obj(1)], vec![Mor(0), Mor(1), Mor(3)]).unwrap();
    let v = smallness_witness(&point(), &[point(), arrow.clone(), chain.clone()], &[j0, j1], DEFAULT_CAP, BUDGET).unwrap();
    assert!(v.bijective);
    assert_eq!(v.homs_into_colimit, 3);

    // Quotient stages: two points collapse to one.
    let two = arc(FinCat::discrete(["a", "b"]));
    let collapse = to_terminal(&two);
    let v = smallness_witness(&point(), &[two, point()], &[collapse], DEFAULT_CAP, BUDGET).unwrap();
    assert!(v.bijective);
    assert_eq!(v.colimit_of_homs, 1);
}
