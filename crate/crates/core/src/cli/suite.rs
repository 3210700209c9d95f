//! Named property suites over generated or enumerated instances.

use std::fmt;
use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::generate::{generate_instance, random_category, random_complex, Instance, InstanceKind, SuiteConfig};
use crate::acyclic::{check_unit_counit, default_targets, reflect_with_cap};
use crate::congruence::{filtered_colimit, finite_colimit, pushout, saturate, sieve_pushout_direct, RelationPair};
use crate::error::{Error, Result};
use crate::fincat::{
    are_isomorphic, coproduct, DwyerVerdict, enumerate_categories, enumerate_functors, is_acyclic, is_dwyer, is_sieve, EnumerationBounds,
    FinCat, FinFunctor, Mor, Obj, SieveMode,
};
use crate::homology::{homology, nerve_homology, HomologyProfile};
use crate::model::{has_rlp, soa_factorize};
use crate::simplicial::{c_sd2, nerve, sd, tau1, thol_generator, GeneratorSet, SimplicialComplex};

pub const SUITES: &[&str] = &[
    "pushsieve-acyclic",
    "pushsieve-oracle",
    "pushsieve-legs",
    "filtered-colimit",
    "reflect-acyclic",
    "adjunction",
    "generator-counts",
    "generator-structure",
    "homology",
    "coproduct-pushouts",
    "soa",
    "quotient-universal",
];

/// Categories checked exhaustively by the `adjunction` suite.
pub const ADJUNCTION_BOUNDS: EnumerationBounds = EnumerationBounds {
    max_objects: 3,
    max_non_identity: 6,
    max_endo: 4,
};

/// Carriers of the `quotient-universal` suite.
pub const QUOTIENT_BOUNDS: EnumerationBounds = EnumerationBounds {
    max_objects: 3,
    max_non_identity: 3,
    max_endo: 3,
};

/// Targets of the `quotient-universal` suite.
pub const QUOTIENT_TARGET_BOUNDS: EnumerationBounds = EnumerationBounds {
    max_objects: 3,
    max_non_identity: 3,
    max_endo: 3,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// A search budget or growth cap was hit.
    Cap(String),
    /// Outside the finite scope of the property (recorded, not counted).
    Skipped(String),
}

impl Outcome {
    fn from_error(e: Error) -> Outcome {
        if e.is_resource_cap() {
            Outcome::Cap(e.to_string())
        } else {
            Outcome::Fail(e.to_string())
        }
    }

    fn check(ok: bool, why: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(why())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceReport {
    pub index: usize,
    pub label: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub instances: Vec<InstanceReport>,
}

impl SuiteReport {
    pub fn count(&self, pred: impl Fn(&Outcome) -> bool) -> usize {
        self.instances.iter().filter(|r| pred(&r.outcome)).count()
    }

    pub fn passed(&self) -> usize {
        self.count(|o| *o == Outcome::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Fail(_)))
    }

    pub fn capped(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Cap(_)))
    }

    pub fn skipped(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Skipped(_)))
    }

    /// Checked instances, excluding skipped ones.
    pub fn checked(&self) -> usize {
        self.instances.len() - self.skipped()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.checked()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "suite {}: {}/{} passed, {} failed, {} capped",
            self.suite,
            self.passed(),
            self.checked(),
            self.failed(),
            self.capped()
        );
        if self.skipped() > 0 {
            s.push_str(&format!(", {} skipped", self.skipped()));
        }
        s
    }

    /// One line per instance, then the summary.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .instances
            .iter()
            .map(|r| match &r.outcome {
                Outcome::Pass => format!("#{} pass {}", r.index, r.label),
                Outcome::Fail(w) => format!("#{} FAIL {}: {w}", r.index, r.label),
                Outcome::Cap(w) => format!("#{} CAP {}: {w}", r.index, r.label),
                Outcome::Skipped(w) => format!("#{} skip {}: {w}", r.index, r.label),
            })
            .collect();
        out.push(self.summary());
        out
    }

    pub fn to_json(&self) -> Value {
        let instances: Vec<Value> = self
            .instances
            .iter()
            .map(|r| {
                let (status, detail) = match &r.outcome {
                    Outcome::Pass => ("pass", None),
                    Outcome::Fail(w) => ("fail", Some(w)),
                    Outcome::Cap(w) => ("cap", Some(w)),
                    Outcome::Skipped(w) => ("skipped", Some(w)),
                };
                json!({"index": r.index, "label": r.label, "status": status, "detail": detail})
            })
            .collect();
        json!({
            "suite": self.suite,
            "seed": self.config.seed,
            "instance_count": self.config.instance_count,
            "max_objects": self.config.max_objects,
            "max_morphisms": self.config.max_morphisms,
            "cap": self.config.cap,
            "budget": self.config.budget,
            "passed": self.passed(),
            "failed": self.failed(),
            "capped": self.capped(),
            "skipped": self.skipped(),
            "instances": instances,
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

type Check = Box<dyn Fn(usize) -> (String, Outcome) + Sync>;

fn run_indexed(n: usize, check: Check) -> Vec<InstanceReport> {
    (0..n)
        .into_par_iter()
        .map(|index| {
            let (label, outcome) = check(index);
            InstanceReport { index, label, outcome }
        })
        .collect()
}

fn settle(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(Outcome::from_error)
}

/// Runs a suite. Reports are identical for identical names and configs.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let c = cfg.clone();
    let instances = match name {
        "pushsieve-acyclic" | "pushsieve-oracle" | "pushsieve-legs" => {
            let which = name.to_string();
            run_indexed(
                cfg.instance_count,
                Box::new(move |k| {
                    let Instance::SieveSpan { i, f } = generate_instance(InstanceKind::SieveSpan, &c, k) else {
                        unreachable!()
                    };
                    let label = format!("|A|={} |B|={} |C|={}", i.source().num_objects(), i.target().num_objects(), f.target().num_objects());
                    let outcome = settle(match which.as_str() {
                        "pushsieve-acyclic" => check_pushsieve_acyclic(&i, &f, &c),
                        "pushsieve-oracle" => check_pushsieve_oracle(&i, &f, &c),
                        _ => check_pushsieve_legs(&i, &f, &c),
                    });
                    (label, outcome)
                }),
            )
        }
        "filtered-colimit" => run_indexed(
            cfg.instance_count,
            Box::new(move |k| {
                let Instance::FilteredDiagram(d) = generate_instance(InstanceKind::FilteredDiagram, &c, k) else {
                    unreachable!()
                };
                let label = format!("index with {} objects", d.index.num_objects());
                (label, settle(check_filtered(&d, &c)))
            }),
        ),
        "reflect-acyclic" => {
            let corpus = reflection_corpus();
            let n = corpus.len();
            run_indexed(
                n + cfg.instance_count,
                Box::new(move |k| {
                    if k < n {
                        let (name, cat, expect_terminal) = &corpus[k];
                        return (name.to_string(), settle(check_reflect_corpus(cat, *expect_terminal, &c)));
                    }
                    let cat = Arc::new(random_category(&mut c.rng(k - n), &c));
                    let label = format!("random, {} objects, {} morphisms", cat.num_objects(), cat.num_morphisms());
                    let outcome = settle(reflect_with_cap(&cat, c.cap).map(|r| {
                        Outcome::check(is_acyclic(&r.quotient), || "reflection is not acyclic".into())
                    }));
                    (label, outcome)
                }),
            )
        }
        "adjunction" => {
            let cats: Vec<Arc<FinCat>> = enumerate_categories(ADJUNCTION_BOUNDS).into_iter().map(Arc::new).collect();
            let targets = default_targets();
            run_indexed(
                cats.len(),
                Box::new(move |k| {
                    let cat = &cats[k];
                    let label = format!("{} objects, {} morphisms", cat.num_objects(), cat.num_morphisms());
                    (label, settle(check_adjunction(cat, &targets, &c)))
                }),
            )
        }
        "generator-counts" => {
            let checks = generator_count_checks();
            run_indexed(checks.len(), Box::new(move |k| (checks[k].0.to_string(), settle((checks[k].1)()))))
        }
        "generator-structure" => {
            let gens: Vec<(GeneratorSet, usize, Option<usize>)> = (0..=3)
                .flat_map(|n| {
                    std::iter::once((GeneratorSet::I, n, None))
                        .chain((0..=n).filter(move |_| n >= 1).map(move |k| (GeneratorSet::J, n, Some(k))))
                })
                .collect();
            run_indexed(
                gens.len(),
                Box::new(move |k| {
                    let (set, n, horn) = gens[k];
                    let outcome = settle(thol_generator(set, n, horn).and_then(|g| {
                        let sieve = is_sieve(&g.inclusion, SieveMode::Sieve)?;
                        let verdict = is_dwyer(&g.inclusion, c.budget)?;
                        let valid = match &verdict {
                            DwyerVerdict::Witness(w) => w.validate(&g.inclusion),
                            DwyerVerdict::NotDwyer(r) => Err(format!("{r:?}")),
                        };
                        Ok(Outcome::check(sieve && verdict.is_dwyer() && valid.is_ok(), || {
                            format!("sieve: {sieve}, dwyer: {}, witness: {valid:?}", verdict.is_dwyer())
                        }))
                    }));
                    let label = match horn {
                        Some(h) => format!("J({n},{h})"),
                        None => format!("I({n})"),
                    };
                    (label, outcome)
                }),
            )
        }
        "homology" => {
            let fixed = homology_fixed_cases();
            let n = fixed.len();
            run_indexed(
                n + cfg.instance_count,
                Box::new(move |k| {
                    if k < n {
                        let (label, complex, expected) = &fixed[k];
                        let outcome = settle(nerve_homology(&c_sd2(complex).to_category()).map(|h| {
                            Outcome::check(h == *expected, || format!("got {h}, expected {expected}"))
                        }));
                        return (label.clone(), outcome);
                    }
                    let x = random_complex(&mut c.rng(k - n), c.max_objects, 3);
                    let label = format!("random complex, f-vector {:?}", x.f_vector());
                    let outcome = settle(homology(&x).and_then(|h| {
                        let hs = homology(&sd(&x))?;
                        Ok(Outcome::check(h == hs, || format!("K: {h}; sd K: {hs}")))
                    }));
                    (label, outcome)
                }),
            )
        }
        "coproduct-pushouts" => run_indexed(
            cfg.instance_count,
            Box::new(move |k| {
                let mut rng = c.rng(k);
                let parts: Vec<Arc<FinCat>> =
                    (0..rand::Rng::gen_range(&mut rng, 0..=4)).map(|_| Arc::new(random_category(&mut rng, &c))).collect();
                let label = format!("family of {}", parts.len());
                (label, settle(check_coproduct_by_pushouts(&parts, &c)))
            }),
        ),
        "soa" => run_indexed(
            cfg.instance_count,
            Box::new(move |k| {
                let Instance::Functor(f) = generate_instance(InstanceKind::Functor, &c, k) else { unreachable!() };
                let label = format!("{} -> {} objects", f.source().num_objects(), f.target().num_objects());
                (label, settle(check_soa(&f, &c)))
            }),
        ),
        "quotient-universal" => {
            let cats: Vec<Arc<FinCat>> = enumerate_categories(QUOTIENT_BOUNDS).into_iter().map(Arc::new).collect();
            let cases: Vec<(Arc<FinCat>, RelationPair, String)> =
                cats.iter().flat_map(|cat| single_relations(cat).into_iter().map(move |(r, l)| (cat.clone(), r, l))).collect();
            let targets: Vec<Arc<FinCat>> =
                enumerate_categories(QUOTIENT_TARGET_BOUNDS).into_iter().map(Arc::new).collect();
            run_indexed(
                cases.len(),
                Box::new(move |k| {
                    let (cat, r, label) = &cases[k];
                    (label.clone(), settle(check_quotient_universal(cat, r, &targets, &c)))
                }),
            )
        }
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        config: cfg.clone(),
        instances,
    })
}

fn check_pushsieve_acyclic(i: &FinFunctor, f: &FinFunctor, c: &SuiteConfig) -> Result<Outcome> {
    let p = pushout(i, f, c.cap)?;
    Ok(Outcome::check(is_acyclic(&p.category), || "pushout is not acyclic".into()))
}

fn check_pushsieve_oracle(i: &FinFunctor, f: &FinFunctor, c: &SuiteConfig) -> Result<Outcome> {
    let p = pushout(i, f, c.cap)?;
    let q = sieve_pushout_direct(i, f)?;
    let iso = are_isomorphic(&p.category, &q.category, c.budget)?;
    Ok(Outcome::check(iso.is_some(), || {
        format!(
            "congruence pushout has {}/{} objects/morphisms, direct one {}/{}",
            p.category.num_objects(),
            p.category.num_morphisms(),
            q.category.num_objects(),
            q.category.num_morphisms()
        )
    }))
}

fn check_pushsieve_legs(i: &FinFunctor, f: &FinFunctor, c: &SuiteConfig) -> Result<Outcome> {
    let p = pushout(i, f, c.cap)?;
    let leg = &p.right;
    if !leg.is_injective_on_objects() || !leg.is_full() || !leg.is_faithful() {
        return Ok(Outcome::Fail(format!(
            "C-leg: injective on objects {}, full {}, faithful {}",
            leg.is_injective_on_objects(),
            leg.is_full(),
            leg.is_faithful()
        )));
    }
    let b = i.target();
    let in_a: Vec<bool> = {
        let mut v = vec![false; b.num_objects()];
        for x in i.source().objects() {
            v[i.obj(x).0] = true;
        }
        v
    };
    for z in p.category.objects() {
        let outside = b.objects().filter(|&x| !in_a[x.0] && p.left.obj(x) == z).count();
        let from_a = b.objects().filter(|&x| in_a[x.0] && p.left.obj(x) == z).count();
        let from_c = f.target().objects().filter(|&y| leg.obj(y) == z).count();
        let singleton = outside == 1 && from_a == 0 && from_c == 0;
        let one_c = from_c == 1 && outside == 0;
        if singleton == one_c {
            return Ok(Outcome::Fail(format!(
                "class of {} has {outside} objects of B\\A, {from_a} of A and {from_c} of C",
                p.category.obj_name(z)
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn check_filtered(d: &crate::congruence::DiagramInCat, c: &SuiteConfig) -> Result<Outcome> {
    let fc = filtered_colimit(d)?;
    if !is_acyclic(&fc.category) {
        return Ok(Outcome::Fail("filtered colimit is not acyclic".into()));
    }
    let general = finite_colimit(d, c.cap)?;
    let iso = are_isomorphic(&fc.category, &general.category, c.budget)?;
    Ok(Outcome::check(iso.is_some(), || "filtered and general colimits differ".into()))
}

fn walking_iso() -> FinCat {
    FinCat::build(
        vec!["a".into(), "b".into()],
        vec![("f".into(), Obj(0), Obj(1)), ("g".into(), Obj(1), Obj(0))],
        |x, y| match (x.0, y.0) {
            (2, 3) => Some(Mor(0)),
            (3, 2) => Some(Mor(1)),
            _ => None,
        },
    )
    .expect("walking isomorphism")
}

fn group_z2() -> FinCat {
    FinCat::build(vec!["*".into()], vec![("s".into(), Obj(0), Obj(0))], |_, _| Some(Mor(0))).expect("Z/2")
}

fn parallel_pair() -> FinCat {
    FinCat::build(
        vec!["a".into(), "b".into()],
        vec![("f".into(), Obj(0), Obj(1)), ("g".into(), Obj(0), Obj(1))],
        |_, _| None,
    )
    .expect("parallel pair")
}

/// Name, category, and whether the reflection must be terminal (otherwise
/// the unit must be an isomorphism).
pub fn reflection_corpus() -> Vec<(&'static str, Arc<FinCat>, bool)> {
    vec![
        ("walking isomorphism", Arc::new(walking_iso()), true),
        ("group of order 2", Arc::new(group_z2()), true),
        ("parallel pair", Arc::new(parallel_pair()), false),
        ("chain of length 3", Arc::new(FinCat::chain(3)), false),
    ]
}

fn check_reflect_corpus(cat: &Arc<FinCat>, expect_terminal: bool, c: &SuiteConfig) -> Result<Outcome> {
    let r = reflect_with_cap(cat, c.cap)?;
    if expect_terminal {
        let terminal = Arc::new(FinCat::terminal());
        let iso = are_isomorphic(&r.quotient, &terminal, c.budget)?;
        Ok(Outcome::check(iso.is_some(), || "reflection is not terminal".into()))
    } else {
        Ok(Outcome::check(r.unit.is_isomorphism(), || "unit is not an isomorphism".into()))
    }
}

fn check_adjunction(cat: &Arc<FinCat>, targets: &[(String, Arc<FinCat>)], c: &SuiteConfig) -> Result<Outcome> {
    let report = check_unit_counit(cat, targets, c.budget)?;
    if !report.passed() {
        return Ok(Outcome::Fail(report.failures.join("; ")));
    }
    let x = nerve(cat, Some(2))?;
    let t = tau1(&x, c.cap)?;
    let iso = are_isomorphic(&t, cat, c.budget)?;
    Ok(Outcome::check(iso.is_some(), || "fundamental category of the nerve differs".into()))
}

type NamedCheck = (&'static str, Box<dyn Fn() -> Result<Outcome> + Sync + Send>);

fn generator_count_checks() -> Vec<NamedCheck> {
    vec![
        (
            "cSd2 of the 1-simplex has 5 elements",
            Box::new(|| {
                let n = c_sd2(&SimplicialComplex::standard(1)).len();
                Ok(Outcome::check(n == 5, || format!("got {n}")))
            }),
        ),
        (
            "cSd2 of the 2-simplex has 25 elements",
            Box::new(|| {
                let n = c_sd2(&SimplicialComplex::standard(2)).len();
                Ok(Outcome::check(n == 25, || format!("got {n}")))
            }),
        ),
        (
            "sd of the 2-simplex has f-vector (7, 12, 6)",
            Box::new(|| {
                let f = sd(&SimplicialComplex::standard(2)).f_vector();
                Ok(Outcome::check(f == [7, 12, 6], || format!("got {f:?}")))
            }),
        ),
        (
            "I(0) is the inclusion of the empty category into the point",
            Box::new(|| {
                let g = thol_generator(GeneratorSet::I, 0, None)?;
                let ok = g.inclusion.source().num_objects() == 0 && g.inclusion.target().num_morphisms() == 1;
                Ok(Outcome::check(ok, || "unexpected shape".into()))
            }),
        ),
    ]
}

fn homology_fixed_cases() -> Vec<(String, SimplicialComplex, HomologyProfile)> {
    let mut out = Vec::new();
    for n in 0..=3 {
        out.push((format!("simplex {n}"), SimplicialComplex::standard(n), HomologyProfile::point()));
        for k in 0..=n {
            if n >= 1 {
                let horn = SimplicialComplex::horn(n, k).expect("valid horn");
                out.push((format!("horn ({n},{k})"), horn, HomologyProfile::point()));
            }
        }
        out.push((
            format!("boundary {n}"),
            SimplicialComplex::boundary(n),
            HomologyProfile::sphere(n.checked_sub(1)),
        ));
    }
    out
}

/// Coproduct built as a sequence of pushouts over the empty category.
pub fn coproduct_by_pushouts(parts: &[Arc<FinCat>], cap: usize) -> Result<Arc<FinCat>> {
    let mut acc = Arc::new(FinCat::empty());
    for part in parts {
        let left = FinFunctor::from_empty(acc.clone());
        let right = FinFunctor::new(left.source().clone(), part.clone(), Vec::new(), Vec::new())?;
        acc = pushout(&left, &right, cap)?.category;
    }
    Ok(acc)
}

fn check_coproduct_by_pushouts(parts: &[Arc<FinCat>], c: &SuiteConfig) -> Result<Outcome> {
    let stepwise = coproduct_by_pushouts(parts, c.cap)?;
    let direct = coproduct(parts).category;
    let iso = are_isomorphic(&stepwise, &direct, c.budget)?;
    Ok(Outcome::check(iso.is_some(), || "successive pushouts differ from the coproduct".into()))
}

/// Generator truncation and stage limit used by the `soa` suite.
pub const SOA_MAX_DIM: usize = 2;
pub const SOA_MAX_STAGES: usize = 8;

fn check_soa(f: &FinFunctor, c: &SuiteConfig) -> Result<Outcome> {
    let fac = soa_factorize(f, GeneratorSet::J, SOA_MAX_DIM, SOA_MAX_STAGES, c.cap, c.budget)?;
    if !fac.recomposes_to(f) {
        return Ok(Outcome::Fail("composite differs from f".into()));
    }
    if let Some(k) = fac.record.stages.iter().position(|s| !is_acyclic(&s.category)) {
        return Ok(Outcome::Fail(format!("stage {k} is not acyclic")));
    }
    fac.record.validate(c.cap)?;
    let verdict = has_rlp(&fac.q, GeneratorSet::J, SOA_MAX_DIM, c.budget)?;
    Ok(Outcome::check(verdict.holds, || "q lacks the lifting property".into()))
}

/// Every single object-pair relation and every single pair of distinct
/// composable sequences of length at most 2.
pub fn single_relations(c: &FinCat) -> Vec<(RelationPair, String)> {
    let mut out = Vec::new();
    for x in c.objects() {
        for y in c.objects().filter(|&y| y > x) {
            let label = format!("{}: objects {} ~ {}", shape(c), c.obj_name(x), c.obj_name(y));
            out.push((RelationPair::new().objects(x, y), label));
        }
    }
    let mut seqs: Vec<Vec<Mor>> = c.non_identity().map(|f| vec![f]).collect();
    for f in c.non_identity() {
        for g in c.non_identity().filter(|&g| c.composable(f, g)) {
            seqs.push(vec![f, g]);
        }
    }
    let name = |s: &[Mor]| s.iter().map(|&m| c.mor_name(m)).collect::<Vec<_>>().join(";");
    for a in 0..seqs.len() {
        for b in a + 1..seqs.len() {
            let label = format!("{}: {} ~ {}", shape(c), name(&seqs[a]), name(&seqs[b]));
            out.push((RelationPair::new().sequences(seqs[a].clone(), seqs[b].clone()), label));
        }
    }
    out
}

fn shape(c: &FinCat) -> String {
    let arrows: Vec<String> = c
        .non_identity()
        .map(|f| format!("{}:{}->{}", c.mor_name(f), c.obj_name(c.src(f)), c.obj_name(c.tgt(f))))
        .collect();
    let table: Vec<String> = c
        .nontrivial_composites()
        .map(|(f, g, h)| format!("{};{}={}", c.mor_name(f), c.mor_name(g), c.mor_name(h)))
        .collect();
    format!("[{} | {} | {}]", c.object_names().join(","), arrows.join(","), table.join(","))
}

fn check_quotient_universal(c: &Arc<FinCat>, r: &RelationPair, targets: &[Arc<FinCat>], cfg: &SuiteConfig) -> Result<Outcome> {
    let p = match saturate(c, r, cfg.cap) {
        Ok(p) => p,
        Err(Error::GrowthExceeded { .. }) => return Ok(Outcome::Skipped("the quotient is infinite".into())),
        Err(e) => return Err(e),
    };
    let q = &p.quotient;
    for d in targets {
        // Composites `projection ; G`, keyed by their action.
        let mut composites: HashMap<(Vec<Obj>, Vec<Mor>), usize> = HashMap::new();
        for g in enumerate_functors(q, d, cfg.budget)? {
            let h = p.projection.then(&g)?;
            *composites.entry((h.obj_map().to_vec(), h.mor_map().to_vec())).or_default() += 1;
        }
        for f in enumerate_functors(c, d, cfg.budget)? {
            let image = |s: &[Mor]| d.compose_path(&s.iter().map(|&m| f.mor(m)).collect::<Vec<_>>());
            let satisfies = r.object_pairs.iter().all(|&(x, y)| f.obj(x) == f.obj(y))
                && r.sequence_pairs.iter().all(|(u, v)| image(u).is_some() && image(u) == image(v));
            let key = (f.obj_map().to_vec(), f.mor_map().to_vec());
            let factorings = composites.get(&key).copied().unwrap_or(0);
            let checked = p.factor(r, &f);
            let consistent = if satisfies {
                factorings == 1 && checked.is_ok()
            } else {
                factorings == 0 && matches!(checked, Err(Error::ConditionsViolated(_)))
            };
            if !consistent {
                return Ok(Outcome::Fail(format!(
                    "functor into {} objects: conditions {satisfies}, {factorings} factorings, check {}",
                    d.num_objects(),
                    match &checked {
                        Ok(_) => "ok".to_string(),
                        Err(e) => e.to_string(),
                    }
                )));
            }
        }
    }
    Ok(Outcome::Pass)
}
