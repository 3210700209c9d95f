//! The acyclic reflection `p: Cat -> Ac` and colimits of acyclic categories.

use std::sync::Arc;

use crate::congruence::{colimit_presentation, object_classes, saturate, Colimit, DiagramInCat, RelationPair, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::fincat::{count_functors, is_acyclic, FinCat, FinFunctor, Obj};

#[derive(Clone, Debug)]
pub struct ReflectionResult {
    pub quotient: Arc<FinCat>,
    /// `C -> p(C)`
    pub unit: FinFunctor,
    /// Number of collapse passes performed.
    pub rounds: usize,
}

/// One collapse pass: identify mutually reachable objects and send every
/// morphism between them to an identity.
fn collapse_relation(c: &FinCat) -> RelationPair {
    let mut r = RelationPair::new();
    for x in c.objects() {
        for y in c.objects().filter(|&y| y >= x) {
            if c.hom(x, y).is_empty() || c.hom(y, x).is_empty() {
                continue;
            }
            if x != y {
                r.object_pairs.push((x, y));
            }
            for &f in c.hom(x, y).iter().chain(if x != y { c.hom(y, x) } else { &[] }) {
                if !c.is_identity(f) {
                    r.sequence_pairs.push((vec![f], vec![c.id(c.src(f))]));
                }
            }
        }
    }
    r
}

/// Acyclic reflection, iterating collapse passes until the result is acyclic.
pub fn reflect(c: &Arc<FinCat>) -> Result<ReflectionResult> {
    reflect_with_cap(c, DEFAULT_CAP)
}

pub fn reflect_with_cap(c: &Arc<FinCat>, cap: usize) -> Result<ReflectionResult> {
    let mut unit = FinFunctor::identity(c.clone());
    let mut current = c.clone();
    let mut rounds = 0;
    loop {
        let p = saturate(&current, &collapse_relation(&current), cap)?;
        unit = unit.then(&p.projection)?;
        current = p.quotient;
        rounds += 1;
        if is_acyclic(&current) {
            return Ok(ReflectionResult {
                quotient: current,
                unit,
                rounds,
            });
        }
    }
}

/// Colimit in `Ac`, the reflection of the colimit in `Cat`.
///
/// The `Cat` colimit may be infinite (a glued loop is a free category), so
/// the collapse is folded into the presentation: strongly connected object
/// classes of the glued generator graph are merged and the generators inside
/// them sent to identities before saturating.
pub fn ac_colimit(d: &DiagramInCat, cap: usize) -> Result<Colimit> {
    for i in d.index.objects() {
        if !is_acyclic(&d.nodes[i.0]) {
            return Err(Error::NotAcyclicInput(d.index.obj_name(i).to_string()));
        }
    }
    let (cp, mut r) = colimit_presentation(d);
    let c = &cp.category;
    let class = object_classes(c, &r);
    let k = class.iter().map(|&x| x + 1).max().unwrap_or(0);
    let mut succ = vec![Vec::new(); k];
    for g in c.non_identity() {
        succ[class[c.src(g).0]].push(class[c.tgt(g).0]);
    }
    let reach: Vec<Vec<bool>> = (0..k)
        .map(|s| {
            let mut seen = vec![false; k];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                for &y in &succ[x] {
                    if !std::mem::replace(&mut seen[y], true) {
                        stack.push(y);
                    }
                }
            }
            seen
        })
        .collect();
    let strong = |x: usize, y: usize| reach[x][y] && reach[y][x];
    let component: Vec<usize> = (0..k).map(|x| (0..k).find(|&l| strong(x, l)).expect("reflexive")).collect();
    let mut leader: Vec<Option<Obj>> = vec![None; k];
    for x in c.objects() {
        match leader[component[class[x.0]]] {
            Some(l) => r.object_pairs.push((l, x)),
            None => leader[component[class[x.0]]] = Some(x),
        }
    }
    for g in c.non_identity() {
        if strong(class[c.src(g).0], class[c.tgt(g).0]) {
            r.sequence_pairs.push((vec![g], vec![c.id(c.src(g))]));
        }
    }
    let p = saturate(c, &r, cap)?;
    let mut cocone = cp.injections.iter().map(|j| j.then(&p.projection)).collect::<Result<Vec<_>>>()?;
    let mut category = p.quotient;
    if !is_acyclic(&category) {
        let refl = reflect_with_cap(&category, cap)?;
        cocone = cocone.iter().map(|leg| leg.then(&refl.unit)).collect::<Result<Vec<_>>>()?;
        category = refl.quotient;
    }
    Ok(Colimit { category, cocone })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCount {
    pub target: String,
    /// `|Ac(p(C), D)|`
    pub from_reflection: u64,
    /// `|Cat(C, i(D))|`
    pub from_original: u64,
}

#[derive(Clone, Debug)]
pub struct UnitCounitReport {
    /// Only meaningful when `C` is acyclic.
    pub unit_is_iso: Option<bool>,
    pub counts: Vec<HomCount>,
    pub failures: Vec<String>,
}

impl UnitCounitReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Small acyclic categories used as default test targets.
pub fn default_targets() -> Vec<(String, Arc<FinCat>)> {
    let parallel = FinCat::build(
        vec!["x".into(), "y".into()],
        vec![("u".into(), Obj(0), Obj(1)), ("v".into(), Obj(0), Obj(1))],
        |_, _| None,
    )
    .expect("parallel pair");
    vec![
        ("point".into(), Arc::new(FinCat::terminal())),
        ("arrow".into(), Arc::new(FinCat::arrow())),
        ("chain3".into(), Arc::new(FinCat::chain(3))),
        ("parallel".into(), Arc::new(parallel)),
        ("two-points".into(), Arc::new(FinCat::discrete(["p", "q"]))),
    ]
}

/// Checks the unit on acyclic input and the hom-set bijection of the
/// adjunction against each target.
pub fn check_unit_counit(c: &Arc<FinCat>, targets: &[(String, Arc<FinCat>)], budget: u64) -> Result<UnitCounitReport> {
    let refl = reflect(c)?;
    let mut failures = Vec::new();
    let unit_is_iso = is_acyclic(c).then(|| refl.unit.is_isomorphism());
    if unit_is_iso == Some(false) {
        failures.push("unit is not an isomorphism on an acyclic category".to_string());
    }
    let mut counts = Vec::new();
    for (name, d) in targets {
        if !is_acyclic(d) {
            failures.push(format!("target {name} is not acyclic"));
            continue;
        }
        let hc = HomCount {
            target: name.clone(),
            from_reflection: count_functors(&refl.quotient, d, budget)?,
            from_original: count_functors(c, d, budget)?,
        };
        if hc.from_reflection != hc.from_original {
            failures.push(format!(
                "target {name}: {} functors from p(C) but {} from C",
                hc.from_reflection, hc.from_original
            ));
        }
        counts.push(hc);
    }
    Ok(UnitCounitReport {
        unit_is_iso,
        counts,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{finite_colimit, pushout, DiagramInCat};
    use crate::fincat::{are_isomorphic, coproduct, Mor};

    fn span_index() -> Arc<FinCat> {
        Arc::new(
            FinCat::build(
                vec!["A".into(), "B".into(), "C".into()],
                vec![("i".into(), Obj(0), Obj(1)), ("f".into(), Obj(0), Obj(2))],
                |_, _| None,
            )
            .unwrap(),
        )
    }

    fn walking_iso() -> Arc<FinCat> {
        Arc::new(
            FinCat::build(
                vec!["a".into(), "b".into()],
                vec![("f".into(), Obj(0), Obj(1)), ("g".into(), Obj(1), Obj(0))],
                |x, y| match (x.0, y.0) {
                    (2, 3) => Some(Mor(0)),
                    (3, 2) => Some(Mor(1)),
                    _ => None,
                },
            )
            .unwrap(),
        )
    }

    fn z2() -> Arc<FinCat> {
        Arc::new(FinCat::build(vec!["*".into()], vec![("s".into(), Obj(0), Obj(0))], |_, _| Some(Mor(0))).unwrap())
    }

    #[test]
    fn poset_reflects_to_itself() {
        let c = Arc::new(FinCat::arrow());
        let r = reflect(&c).unwrap();
        assert_eq!(r.rounds, 1);
        assert!(r.unit.is_isomorphism());
    }

    #[test]
    fn walking_iso_and_group_collapse_to_a_point() {
        for c in [walking_iso(), z2()] {
            let r = reflect(&c).unwrap();
            assert_eq!(r.quotient.num_morphisms(), 1);
            assert!(r.unit.is_surjective());
        }
    }

    #[test]
    fn glued_loop_collapses_to_a_point() {
        // Two arrows glued head to tail at both ends. In Cat this is the free
        // category on a 2-cycle; its reflection is a point.
        let arrow = Arc::new(FinCat::arrow());
        let two = Arc::new(FinCat::discrete(["s", "t"]));
        let i = FinFunctor::new(two.clone(), arrow.clone(), vec![Obj(0), Obj(1)], vec![Mor(0), Mor(1)]).unwrap();
        let f = FinFunctor::new(two.clone(), arrow.clone(), vec![Obj(1), Obj(0)], vec![Mor(1), Mor(0)]).unwrap();
        let d = DiagramInCat::new(span_index(), vec![two, arrow.clone(), arrow], vec![i.clone(), f.clone()]).unwrap();
        assert!(matches!(finite_colimit(&d, 1000), Err(Error::GrowthExceeded { .. })));
        let col = ac_colimit(&d, 1000).unwrap();
        assert_eq!(col.category.num_morphisms(), 1);
    }

    #[test]
    fn ac_colimit_of_sieve_span_is_the_cat_pushout() {
        let b = Arc::new(FinCat::chain(3));
        let (a, i) = crate::fincat::full_subcategory(&b, &[Obj(0)]);
        let c = Arc::new(FinCat::arrow());
        let f = FinFunctor::new(a.clone(), c.clone(), vec![Obj(1)], vec![Mor(1)]).unwrap();
        let d = DiagramInCat::new(span_index(), vec![a, b, c], vec![i.clone(), f.clone()]).unwrap();
        let col = ac_colimit(&d, 1000).unwrap();
        let p = pushout(&i, &f, 1000).unwrap();
        assert!(are_isomorphic(&col.category, &p.category, 10_000).unwrap().is_some());
        let refl = reflect(&finite_colimit(&d, 1000).unwrap().category).unwrap();
        assert!(are_isomorphic(&col.category, &refl.quotient, 10_000).unwrap().is_some());
    }

    #[test]
    fn unit_counit_checks() {
        let targets = default_targets();
        for c in [walking_iso(), z2(), Arc::new(FinCat::chain(3))] {
            let rep = check_unit_counit(&c, &targets, 1_000_000).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
        }
        let rep = check_unit_counit(&walking_iso(), &targets[..1], 1000).unwrap();
        assert_eq!(rep.counts[0].from_reflection, 1);
        assert_eq!(rep.counts[0].from_original, 1);
    }

    #[test]
    fn ac_colimit_rejects_cyclic_nodes() {
        let d = DiagramInCat::new(Arc::new(FinCat::terminal()), vec![z2()], vec![]).unwrap();
        assert!(matches!(ac_colimit(&d, 100), Err(Error::NotAcyclicInput(_))));
        let d = DiagramInCat::new(Arc::new(FinCat::discrete(["p", "q"])), vec![Arc::new(FinCat::arrow()), Arc::new(FinCat::chain(3))], vec![]).unwrap();
        let col = ac_colimit(&d, 1000).unwrap();
        let cp = coproduct(&[Arc::new(FinCat::arrow()), Arc::new(FinCat::chain(3))]).category;
        assert!(are_isomorphic(&col.category, &cp, 10_000).unwrap().is_some());
    }
}
