//! Seeded random instances for the property suites.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::congruence::{is_filtered, quotient, DiagramInCat, RelationPair};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, full_subcategory, is_acyclic, is_sieve, FinCat, FinFunctor, Mor, Obj, SieveMode};
use crate::simplicial::{Poset, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub instance_count: usize,
    pub max_objects: usize,
    /// Bound on non-identity morphisms.
    pub max_morphisms: usize,
    pub cap: usize,
    pub budget: u64,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            seed: 7,
            instance_count: 100,
            max_objects: 4,
            max_morphisms: 10,
            cap: crate::congruence::DEFAULT_CAP,
            budget: crate::fincat::DEFAULT_BUDGET,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_objects == 0 || self.max_morphisms == 0 || self.cap == 0 || self.budget == 0 {
            return Err(Error::PreconditionViolated("suite bounds must be positive".into()));
        }
        Ok(())
    }

    /// Generator for instance `index`, independent of every other index.
    pub fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    /// Any finite category, cycles allowed.
    Category,
    Acyclic,
    SieveSpan,
    FilteredDiagram,
    /// A functor between acyclic categories.
    Functor,
    Complex,
}

impl std::str::FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<InstanceKind> {
        Ok(match s {
            "category" => InstanceKind::Category,
            "acyclic" => InstanceKind::Acyclic,
            "sieve-span" => InstanceKind::SieveSpan,
            "filtered-diagram" => InstanceKind::FilteredDiagram,
            "functor" => InstanceKind::Functor,
            "complex" => InstanceKind::Complex,
            _ => return Err(Error::PreconditionViolated(format!("unknown instance kind `{s}`"))),
        })
    }
}

#[derive(Clone, Debug)]
pub enum Instance {
    Category(Arc<FinCat>),
    /// `B <-i- A -f-> C` with `i` a sieve.
    SieveSpan { i: FinFunctor, f: FinFunctor },
    FilteredDiagram(DiagramInCat),
    Functor(FinFunctor),
    Complex(SimplicialComplex),
}

/// Deterministic instance number `index` of the given kind.
pub fn generate_instance(kind: InstanceKind, cfg: &SuiteConfig, index: usize) -> Instance {
    let mut rng = cfg.rng(index);
    match kind {
        InstanceKind::Category => Instance::Category(Arc::new(random_category(&mut rng, cfg))),
        InstanceKind::Acyclic => Instance::Category(Arc::new(random_acyclic(&mut rng, cfg.max_objects, cfg.max_morphisms))),
        InstanceKind::SieveSpan => {
            let (i, f) = random_sieve_span(&mut rng, cfg);
            Instance::SieveSpan { i, f }
        }
        InstanceKind::FilteredDiagram => Instance::FilteredDiagram(random_filtered_diagram(&mut rng, cfg)),
        InstanceKind::Functor => Instance::Functor(random_functor(&mut rng, cfg)),
        InstanceKind::Complex => Instance::Complex(random_complex(&mut rng, cfg.max_objects, 3)),
    }
}

/// Random acyclic category: a DAG shell with parallel multiplicities, its
/// free category, then a random set of parallel paths identified.
pub fn random_acyclic<R: Rng>(rng: &mut R, max_objects: usize, max_morphisms: usize) -> FinCat {
    loop {
        let n = rng.gen_range(1..=max_objects.max(1));
        let mut edges = Vec::new();
        for s in 0..n {
            for t in s + 1..n {
                let mult = match rng.gen_range(0..20) {
                    0..=9 => 0,
                    10..=16 => 1,
                    _ => 2,
                };
                for _ in 0..mult {
                    edges.push((s, t));
                }
            }
        }
        let Some(free) = free_dag_category(n, &edges, 4 * max_morphisms) else { continue };
        let free = Arc::new(free);
        let mut r = RelationPair::new();
        let mut by_ends: HashMap<(Obj, Obj), Vec<Mor>> = HashMap::new();
        for m in free.non_identity() {
            by_ends.entry((free.src(m), free.tgt(m))).or_default().push(m);
        }
        let mut keys: Vec<_> = by_ends.keys().copied().collect();
        keys.sort();
        for k in keys {
            let ms = &by_ends[&k];
            for a in 0..ms.len() {
                for b in a + 1..ms.len() {
                    if rng.gen_bool(0.5) {
                        r = r.sequences(vec![ms[a]], vec![ms[b]]);
                    }
                }
            }
        }
        let Ok((q, _)) = quotient(&free, &r, 4 * max_morphisms + n + 8) else { continue };
        if q.num_non_identity() <= max_morphisms {
            let names = (0..n).map(|i| format!("x{i}")).collect();
            return q.with_object_names(names).expect("distinct names");
        }
    }
}

/// Free category on a DAG whose edges go from lower to higher index; `None`
/// when it has more than `limit` non-identity paths.
fn free_dag_category(n: usize, edges: &[(usize, usize)], limit: usize) -> Option<FinCat> {
    // Non-identity paths as edge-index sequences.
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..edges.len()).map(|e| vec![e]).collect();
    while let Some(p) = stack.pop() {
        let end = edges[*p.last().expect("nonempty")].1;
        for (e, &(s, _)) in edges.iter().enumerate() {
            if s == end {
                let mut q = p.clone();
                q.push(e);
                stack.push(q);
            }
        }
        paths.push(p);
        if paths.len() > limit {
            return None;
        }
    }
    paths.sort();
    let index: HashMap<Vec<usize>, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), n + i)).collect();
    let arrows = paths
        .iter()
        .map(|p| {
            let name = p.iter().map(|e| format!("e{e}")).collect::<Vec<_>>().join(";");
            (name, Obj(edges[p[0]].0), Obj(edges[*p.last().expect("nonempty")].1))
        })
        .collect();
    let objects = (0..n).map(|i| format!("x{i}")).collect();
    FinCat::build(objects, arrows, |f, g| {
        let mut p = paths[f.0 - n].clone();
        p.extend_from_slice(&paths[g.0 - n]);
        index.get(&p).map(|&m| Mor(m))
    })
    .ok()
}

/// Random finite category, possibly with cycles: half the time an acyclic
/// one, otherwise a category of functions between small sets closed under
/// composition.
pub fn random_category<R: Rng>(rng: &mut R, cfg: &SuiteConfig) -> FinCat {
    if rng.gen_bool(0.5) {
        return random_acyclic(rng, cfg.max_objects, cfg.max_morphisms);
    }
    loop {
        if let Some(c) = random_concrete(rng, cfg.max_objects, cfg.max_morphisms) {
            return c;
        }
    }
}

fn random_concrete<R: Rng>(rng: &mut R, max_objects: usize, max_morphisms: usize) -> Option<FinCat> {
    let n = rng.gen_range(1..=max_objects);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let identity = |x: usize| (x, x, (0..sizes[x]).collect::<Vec<usize>>());
    let mut arrows: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let push = |arrows: &mut Vec<_>, a: (usize, usize, Vec<usize>)| {
        if a != identity(a.0) && !arrows.contains(&a) {
            arrows.push(a);
        }
    };
    for _ in 0..rng.gen_range(1..=4) {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        let func = (0..sizes[s]).map(|_| rng.gen_range(0..sizes[t])).collect();
        push(&mut arrows, (s, t, func));
    }
    let mut done = 0;
    while done < arrows.len() {
        done = arrows.len();
        for i in 0..done {
            for j in 0..done {
                let (f, g) = (&arrows[i], &arrows[j]);
                if f.1 == g.0 {
                    let h = (f.0, g.1, f.2.iter().map(|&v| g.2[v]).collect());
                    push(&mut arrows, h);
                }
            }
            if arrows.len() > max_morphisms {
                return None;
            }
        }
    }
    let index: HashMap<(usize, usize, Vec<usize>), usize> =
        arrows.iter().enumerate().map(|(i, a)| (a.clone(), n + i)).collect();
    let named = arrows.iter().enumerate().map(|(i, a)| (format!("m{i}"), Obj(a.0), Obj(a.1))).collect();
    let objects = (0..n).map(|i| format!("x{i}")).collect();
    let c = FinCat::build(objects, named, |f, g| {
        let (a, b) = (&arrows[f.0 - n], &arrows[g.0 - n]);
        let h = (a.0, b.1, a.2.iter().map(|&v| b.2[v]).collect::<Vec<usize>>());
        if h == identity(a.0) {
            Some(Mor(a.0))
        } else {
            index.get(&h).map(|&m| Mor(m))
        }
    })
    .expect("closed under composition");
    Some(c)
}

fn random_functor_between<R: Rng>(rng: &mut R, c: &Arc<FinCat>, d: &Arc<FinCat>, budget: u64) -> Option<FinFunctor> {
    let all = enumerate_functors(c, d, budget).ok()?;
    all.choose(rng).cloned()
}

/// A sieve `i: A -> B` (full on a downward-closed object set) and a random
/// functor `f: A -> C`.
pub fn random_sieve_span<R: Rng>(rng: &mut R, cfg: &SuiteConfig) -> (FinFunctor, FinFunctor) {
    loop {
        let b = Arc::new(random_acyclic(rng, cfg.max_objects, cfg.max_morphisms));
        let mut keep: Vec<bool> = b.objects().map(|_| rng.gen_bool(0.4)).collect();
        // Close downwards: anything with a morphism into the set joins it.
        for y in b.objects().rev() {
            if keep[y.0] {
                for x in b.objects() {
                    if !b.hom(x, y).is_empty() {
                        keep[x.0] = true;
                    }
                }
            }
        }
        let chosen: Vec<Obj> = b.objects().filter(|x| keep[x.0]).collect();
        let (a, i) = full_subcategory(&b, &chosen);
        let c = Arc::new(random_acyclic(rng, cfg.max_objects, cfg.max_morphisms));
        let Some(f) = random_functor_between(rng, &a, &c, cfg.budget) else { continue };
        debug_assert!(is_sieve(&i, SieveMode::Sieve).unwrap_or(false));
        return (i, f);
    }
}

/// A diagram over a random rooted tree poset (every object below a single
/// top); any choice of functors along the tree edges is a diagram.
pub fn random_filtered_diagram<R: Rng>(rng: &mut R, cfg: &SuiteConfig) -> DiagramInCat {
    loop {
        let k = rng.gen_range(1..=cfg.max_objects);
        let parent: Vec<usize> = (0..k).map(|j| if j == 0 { 0 } else { rng.gen_range(0..j) }).collect();
        let above = |mut j: usize| {
            let mut chain = vec![j];
            while j != 0 {
                j = parent[j];
                chain.push(j);
            }
            chain
        };
        let names: Vec<String> = (0..k).map(|j| format!("i{j}")).collect();
        let poset = Poset::new(names, |a, b| above(a).contains(&b)).expect("tree order");
        let index = Arc::new(poset.to_category());
        let node_objects = cfg.max_objects.min(3);
        let nodes: Vec<Arc<FinCat>> =
            (0..k).map(|_| Arc::new(random_acyclic(rng, node_objects, cfg.max_morphisms))).collect();
        let mut up: Vec<Option<FinFunctor>> = vec![None; k];
        let mut ok = true;
        for j in 1..k {
            match random_functor_between(rng, &nodes[j], &nodes[parent[j]], cfg.budget) {
                Some(f) => up[j] = Some(f),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let edges = index
            .non_identity()
            .map(|u| {
                let (s, t) = (index.src(u).0, index.tgt(u).0);
                let mut f = FinFunctor::identity(nodes[s].clone());
                let mut j = s;
                while j != t {
                    f = f.then(up[j].as_ref().expect("non-root")).expect("composable");
                    j = parent[j];
                }
                f
            })
            .collect();
        let d = DiagramInCat::new(index, nodes, edges).expect("tree diagrams commute");
        debug_assert!(is_filtered(&d.index));
        return d;
    }
}

pub fn random_functor<R: Rng>(rng: &mut R, cfg: &SuiteConfig) -> FinFunctor {
    loop {
        let c = Arc::new(random_acyclic(rng, cfg.max_objects, cfg.max_morphisms));
        let d = Arc::new(random_acyclic(rng, cfg.max_objects, cfg.max_morphisms));
        if let Some(f) = random_functor_between(rng, &c, &d, cfg.budget) {
            debug_assert!(is_acyclic(f.source()) && is_acyclic(f.target()));
            return f;
        }
    }
}

/// Random complex on at most `max_vertices` vertices with generating
/// simplices of dimension at most `max_dim`.
pub fn random_complex<R: Rng>(rng: &mut R, max_vertices: usize, max_dim: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let mut generating: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for _ in 0..rng.gen_range(0..=2 * n) {
        let size = rng.gen_range(2..=max_dim + 1).min(n);
        let mut s: Vec<usize> = (0..n).collect::<Vec<_>>().choose_multiple(rng, size).copied().collect();
        s.sort_unstable();
        generating.push(s);
    }
    SimplicialComplex::new(names, generating).expect("valid simplices")
}
