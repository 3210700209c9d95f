use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Mor, Obj};

/// Default bound on the number of morphism classes.
pub const DEFAULT_CAP: usize = 10_000;

const NONE: usize = usize::MAX;

/// Generators of a relation on a category: object pairs for `~o` and pairs
/// of nonempty morphism sequences for `~m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationPair {
    pub object_pairs: Vec<(Obj, Obj)>,
    pub sequence_pairs: Vec<(Vec<Mor>, Vec<Mor>)>,
}

impl RelationPair {
    pub fn new() -> RelationPair {
        RelationPair::default()
    }

    pub fn objects(mut self, x: Obj, y: Obj) -> RelationPair {
        self.object_pairs.push((x, y));
        self
    }

    pub fn sequences(mut self, u: Vec<Mor>, v: Vec<Mor>) -> RelationPair {
        self.sequence_pairs.push((u, v));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.object_pairs.is_empty() && self.sequence_pairs.is_empty()
    }

    pub fn extend(&mut self, other: &RelationPair) {
        self.object_pairs.extend_from_slice(&other.object_pairs);
        self.sequence_pairs.extend(other.sequence_pairs.iter().cloned());
    }

    fn check_indices(&self, c: &FinCat) -> Result<()> {
        for &(x, y) in &self.object_pairs {
            if x.0 >= c.num_objects() || y.0 >= c.num_objects() {
                return Err(Error::InvalidRelation("object index out of range".into()));
            }
        }
        for (u, v) in &self.sequence_pairs {
            if u.is_empty() || v.is_empty() {
                return Err(Error::InvalidRelation("sequences must be nonempty".into()));
            }
            if u.iter().chain(v).any(|f| f.0 >= c.num_morphisms()) {
                return Err(Error::InvalidRelation("morphism index out of range".into()));
            }
        }
        Ok(())
    }
}

/// The principal congruence generated by a relation, saturated to a
/// finite quotient.
#[derive(Clone, Debug)]
pub struct CongruencePresentation {
    pub carrier: Arc<FinCat>,
    /// Object class of each carrier object.
    pub object_class: Vec<usize>,
    /// Members of each object class, in carrier order.
    pub class_members: Vec<Vec<Obj>>,
    /// Shortlex-least carrier sequence for each quotient morphism (empty for
    /// identities).
    pub representatives: Vec<Vec<Mor>>,
    pub quotient: Arc<FinCat>,
    pub projection: FinFunctor,
    pub cap: usize,
}

impl CongruencePresentation {
    /// Image in the quotient of a `~o`-composable carrier sequence.
    pub fn evaluate(&self, seq: &[Mor]) -> Option<Mor> {
        let q = &self.quotient;
        let mut acc: Option<Mor> = None;
        for &f in seq {
            let g = self.projection.mor(f);
            acc = Some(match acc {
                None => g,
                Some(a) => q.try_compose(a, g)?,
            });
        }
        acc
    }

    pub fn num_classes(&self) -> usize {
        self.quotient.num_morphisms()
    }
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Keeps the smaller root.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.0[kill] = keep;
        true
    }
}

/// Coset enumeration on the right Cayley graphs of the presented category.
/// Nodes are morphisms, one root (identity) per object class, edges are
/// right multiplication by generators.
struct Enumerator {
    gens_out: Vec<Vec<usize>>,
    gen_pos: Vec<usize>,
    gen_tgt: Vec<usize>,
    /// Relations grouped by the class they start at.
    rels: Vec<Vec<(Vec<usize>, Vec<usize>)>>,
    node_src: Vec<usize>,
    node_tgt: Vec<usize>,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    cap: usize,
    max_total: usize,
}

impl Enumerator {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn new_node(&mut self, src: usize, tgt: usize) -> Result<usize> {
        let id = self.parent.len();
        self.live += 1;
        if self.live > self.cap || id >= self.max_total {
            return Err(Error::GrowthExceeded { cap: self.cap });
        }
        self.parent.push(id);
        self.node_src.push(src);
        self.node_tgt.push(tgt);
        self.table.push(vec![NONE; self.gens_out[tgt].len()]);
        Ok(id)
    }

    fn step(&mut self, node: usize, g: usize) -> Result<usize> {
        let slot = self.gen_pos[g];
        let e = self.table[node][slot];
        if e != NONE {
            return Ok(self.find(e));
        }
        let n = self.new_node(self.node_src[node], self.gen_tgt[g])?;
        self.table[node][slot] = n;
        Ok(n)
    }

    fn trace(&mut self, mut node: usize, word: &[usize]) -> Result<usize> {
        for &g in word {
            node = self.step(node, g)?;
        }
        Ok(node)
    }

    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((a, b)) = queue.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            debug_assert_eq!(self.node_tgt[keep], self.node_tgt[kill]);
            debug_assert_eq!(self.node_src[keep], self.node_src[kill]);
            self.parent[kill] = keep;
            self.live -= 1;
            let row = std::mem::take(&mut self.table[kill]);
            for (slot, e) in row.into_iter().enumerate() {
                if e == NONE {
                    continue;
                }
                let k = self.table[keep][slot];
                if k == NONE {
                    self.table[keep][slot] = e;
                } else {
                    queue.push_back((k, e));
                }
            }
        }
    }

    fn run(&mut self, roots: usize) -> Result<()> {
        for x in 0..roots {
            self.new_node(x, x)?;
        }
        let mut i = 0;
        while i < self.parent.len() {
            if self.find(i) == i {
                let rels = std::mem::take(&mut self.rels[self.node_tgt[i]]);
                let mut outcome = Ok(());
                for (u, v) in &rels {
                    if self.find(i) != i {
                        break;
                    }
                    let a = match self.trace(i, u) {
                        Ok(a) => a,
                        Err(e) => {
                            outcome = Err(e);
                            break;
                        }
                    };
                    let here = self.find(i);
                    let b = match self.trace(here, v) {
                        Ok(b) => b,
                        Err(e) => {
                            outcome = Err(e);
                            break;
                        }
                    };
                    self.coincide(a, b);
                }
                let t = self.node_tgt[i];
                self.rels[t] = rels;
                outcome?;
                if self.find(i) == i {
                    for s in 0..self.gens_out[t].len() {
                        if self.table[i][s] == NONE {
                            let g = self.gens_out[t][s];
                            self.step(i, g)?;
                        }
                    }
                }
            }
            i += 1;
        }
        Ok(())
    }
}

/// Object classes of the congruence generated by `r`: `R_o` plus the
/// endpoints of related sequences. Classes are numbered by least member.
pub fn object_classes(c: &FinCat, r: &RelationPair) -> Vec<usize> {
    let n = c.num_objects();
    let mut uf = UnionFind::new(n);
    for &(x, y) in &r.object_pairs {
        uf.union(x.0, y.0);
    }
    for (u, v) in &r.sequence_pairs {
        uf.union(c.src(u[0]).0, c.src(v[0]).0);
        uf.union(c.tgt(*u.last().unwrap()).0, c.tgt(*v.last().unwrap()).0);
    }
    let mut class_of_root = vec![NONE; n];
    let mut next = 0;
    (0..n)
        .map(|x| {
            let root = uf.find(x);
            if class_of_root[root] == NONE {
                class_of_root[root] = next;
                next += 1;
            }
            class_of_root[root]
        })
        .collect()
}

/// Saturates `r` into the smallest generalized congruence containing it and
/// builds the quotient. Fails with `GrowthExceeded` once more than `cap`
/// morphism classes are alive.
pub fn saturate(c: &Arc<FinCat>, r: &RelationPair, cap: usize) -> Result<CongruencePresentation> {
    r.check_indices(c)?;
    let n = c.num_objects();

    let object_class = object_classes(c, r);
    let k = object_class.iter().map(|&x| x + 1).max().unwrap_or(0);
    let mut class_members: Vec<Vec<Obj>> = vec![Vec::new(); k];
    for x in c.objects() {
        class_members[object_class[x.0]].push(x);
    }
    for (u, v) in &r.sequence_pairs {
        for w in [u, v] {
            if w.windows(2).any(|p| object_class[c.tgt(p[0]).0] != object_class[c.src(p[1]).0]) {
                return Err(Error::InvalidRelation(format!(
                    "sequence ({}) is not composable up to the object relation",
                    w.iter().map(|&f| c.mor_name(f)).collect::<Vec<_>>().join(",")
                )));
            }
        }
    }

    // Generators are the non-identity carrier morphisms.
    let gen = |f: Mor| f.0 - n;
    let mut gens_out = vec![Vec::new(); k];
    let mut gen_pos = Vec::with_capacity(c.num_non_identity());
    let mut gen_tgt = Vec::with_capacity(c.num_non_identity());
    for f in c.non_identity() {
        let s = object_class[c.src(f).0];
        gen_pos.push(gens_out[s].len());
        gens_out[s].push(gen(f));
        gen_tgt.push(object_class[c.tgt(f).0]);
    }
    let word = |seq: &[Mor]| -> Vec<usize> { seq.iter().filter(|&&f| !c.is_identity(f)).map(|&f| gen(f)).collect() };
    let mut rels = vec![Vec::new(); k];
    for (f, g, h) in c.nontrivial_composites() {
        rels[object_class[c.src(f).0]].push((vec![gen(f), gen(g)], word(&[h])));
    }
    for (u, v) in &r.sequence_pairs {
        rels[object_class[c.src(u[0]).0]].push((word(u), word(v)));
    }

    let mut en = Enumerator {
        gens_out,
        gen_pos,
        gen_tgt,
        rels,
        node_src: Vec::new(),
        node_tgt: Vec::new(),
        table: Vec::new(),
        parent: Vec::new(),
        live: 0,
        cap,
        max_total: cap.saturating_mul(64).saturating_add(4096),
    };
    en.run(k)?;

    // Shortlex representatives by breadth-first search from each root.
    let mut index = vec![NONE; en.parent.len()];
    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut order: Vec<(usize, usize)> = Vec::new();
    for x in 0..k {
        index[x] = x;
    }
    for x in 0..k {
        let mut queue = VecDeque::from([(x, Vec::<usize>::new())]);
        while let Some((node, w)) = queue.pop_front() {
            let t = en.node_tgt[node];
            for s in 0..en.gens_out[t].len() {
                let g = en.gens_out[t][s];
                let next = en.find(en.table[node][s]);
                if index[next] == NONE {
                    index[next] = k + order.len();
                    order.push((next, x));
                    let mut w2 = w.clone();
                    w2.push(g);
                    reps.push(w2.clone());
                    queue.push_back((next, w2));
                }
            }
        }
    }
    let nodes: Vec<usize> = (0..k).chain(order.iter().map(|&(node, _)| node)).collect();

    // Names.
    let obj_names: Vec<String> = class_members
        .iter()
        .map(|m| match m.as_slice() {
            [x] => c.obj_name(*x).to_string(),
            _ => format!("[{}]", m.iter().map(|&x| c.obj_name(x)).collect::<Vec<_>>().join(",")),
        })
        .collect();
    let mut used: HashSet<String> = obj_names.iter().map(|o| crate::fincat::identity_name(o)).collect();
    let mut arrows = Vec::with_capacity(order.len());
    for (j, &node) in nodes.iter().enumerate().skip(k) {
        let w = &reps[j];
        let base = match w.as_slice() {
            [g] => c.mor_name(Mor(g + n)).to_string(),
            _ => format!("({})", w.iter().map(|&g| c.mor_name(Mor(g + n))).collect::<Vec<_>>().join(",")),
        };
        let mut name = base.clone();
        let mut suffix = 1;
        while !used.insert(name.clone()) {
            name = format!("{base}#{suffix}");
            suffix += 1;
        }
        arrows.push((name, Obj(en.node_src[node]), Obj(en.node_tgt[node])));
    }
    let quotient = Arc::new(FinCat::build(obj_names, arrows, |a, b| {
        let mut node = nodes[a.0];
        for &g in &reps[b.0] {
            node = en.find(en.table[node][en.gen_pos[g]]);
        }
        Some(Mor(index[node]))
    })?);

    let obj_map: Vec<Obj> = c.objects().map(|x| Obj(object_class[x.0])).collect();
    let mor_map: Vec<Mor> = c
        .morphisms()
        .map(|f| {
            if c.is_identity(f) {
                Mor(object_class[f.0])
            } else {
                let root = object_class[c.src(f).0];
                let g = gen(f);
                Mor(index[en.find(en.table[root][en.gen_pos[g]])])
            }
        })
        .collect();
    let projection = FinFunctor::new_unchecked(c.clone(), quotient.clone(), obj_map, mor_map);
    let representatives = reps.into_iter().map(|w| w.into_iter().map(|g| Mor(g + n)).collect()).collect();
    Ok(CongruencePresentation {
        carrier: c.clone(),
        object_class,
        class_members,
        representatives,
        quotient,
        projection,
        cap,
    })
}

/// Quotient category and quotient functor `Q`.
pub fn quotient(c: &Arc<FinCat>, r: &RelationPair, cap: usize) -> Result<(Arc<FinCat>, FinFunctor)> {
    let p = saturate(c, r, cap)?;
    Ok((p.quotient, p.projection))
}

/// The unique `G: C/~ -> D` with `Q ; G = F`, after checking that `F`
/// identifies related objects and related sequences.
pub fn quotient_universal_check(c: &Arc<FinCat>, r: &RelationPair, f: &FinFunctor, cap: usize) -> Result<FinFunctor> {
    if !crate::fincat::same_category(f.source(), c) {
        return Err(Error::ConditionsViolated("functor has a different source".into()));
    }
    saturate(c, r, cap)?.factor(r, f)
}

impl CongruencePresentation {
    /// The unique `G` with `projection ; G = f`, where `self` was saturated
    /// from `r`.
    pub fn factor(&self, r: &RelationPair, f: &FinFunctor) -> Result<FinFunctor> {
        let c = self.projection.source();
        if !crate::fincat::same_category(f.source(), c) {
            return Err(Error::ConditionsViolated("functor has a different source".into()));
        }
        let d = f.target();
        for members in &self.class_members {
            let y = f.obj(members[0]);
            if let Some(&x) = members.iter().find(|&&x| f.obj(x) != y) {
                return Err(Error::ConditionsViolated(format!(
                    "objects {} and {} are related but have different images",
                    c.obj_name(members[0]),
                    c.obj_name(x)
                )));
            }
        }
        let image = |seq: &[Mor]| d.compose_path(&seq.iter().map(|&g| f.mor(g)).collect::<Vec<_>>());
        for (u, v) in &r.sequence_pairs {
            if image(u) != image(v) {
                return Err(Error::ConditionsViolated("related sequences have different images".into()));
            }
        }
        let q = &self.quotient;
        let obj_map: Vec<Obj> = self.class_members.iter().map(|m| f.obj(m[0])).collect();
        let mor_map: Vec<Mor> = q
            .morphisms()
            .map(|m| {
                if q.is_identity(m) {
                    d.id(obj_map[m.0])
                } else {
                    image(&self.representatives[m.0]).expect("representatives are composable")
                }
            })
            .collect();
        let g = FinFunctor::new(q.clone(), d.clone(), obj_map, mor_map)?;
        let composite = self.projection.then(&g)?;
        if composite.obj_map() != f.obj_map() || composite.mor_map() != f.mor_map() {
            return Err(Error::ConditionsViolated("induced functor does not factor the given one".into()));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{are_isomorphic, coproduct, enumerate_functors};

    fn parallel_pair() -> Arc<FinCat> {
        Arc::new(
            FinCat::build(
                vec!["a".into(), "b".into()],
                vec![("f".into(), Obj(0), Obj(1)), ("g".into(), Obj(0), Obj(1))],
                |_, _| None,
            )
            .unwrap(),
        )
    }

    #[test]
    fn empty_relation_is_discrete_congruence() {
        let c = Arc::new(FinCat::chain(4));
        let p = saturate(&c, &RelationPair::new(), DEFAULT_CAP).unwrap();
        assert_eq!(p.num_classes(), c.num_morphisms());
        assert!(p.projection.is_isomorphism());
        assert_eq!(p.class_members.len(), 4);
    }

    #[test]
    fn collapsing_an_arrow_is_infinite() {
        let c = Arc::new(FinCat::arrow());
        let r = RelationPair::new().objects(Obj(0), Obj(1));
        for cap in [1, 10, 500] {
            assert!(matches!(saturate(&c, &r, cap), Err(Error::GrowthExceeded { .. })));
        }
    }

    #[test]
    fn span_with_empty_relation_is_unchanged() {
        let c = Arc::new(
            FinCat::build(
                vec!["a".into(), "b".into(), "c".into()],
                vec![("f".into(), Obj(0), Obj(1)), ("g".into(), Obj(0), Obj(2))],
                |_, _| None,
            )
            .unwrap(),
        );
        let (q, _) = quotient(&c, &RelationPair::new(), DEFAULT_CAP).unwrap();
        assert!(are_isomorphic(&q, &c, 10_000).unwrap().is_some());
    }

    #[test]
    fn parallel_arrows_merge() {
        let c = parallel_pair();
        let r = RelationPair::new().sequences(vec![Mor(2)], vec![Mor(3)]);
        let (q, proj) = quotient(&c, &r, DEFAULT_CAP).unwrap();
        assert!(are_isomorphic(&q, &Arc::new(FinCat::arrow()), 1000).unwrap().is_some());
        assert_eq!(proj.mor(Mor(2)), proj.mor(Mor(3)));
    }

    #[test]
    fn gluing_two_arrows_end_to_start() {
        // {a -> b} + {c -> d} with b ~ c: a chain of length 3 with one new composite.
        let a = Arc::new(FinCat::arrow());
        let cp = coproduct(&[a.clone(), a]);
        let c = cp.category;
        let b = c.object_by_name("0.b").unwrap();
        let cc = c.object_by_name("1.a").unwrap();
        let (q, _) = quotient(&c, &RelationPair::new().objects(b, cc), DEFAULT_CAP).unwrap();
        assert_eq!(q.num_objects(), 3);
        assert_eq!(q.num_non_identity(), 3);
        assert!(q.morphism_by_name("(0.f,1.f)").is_some());
        assert!(are_isomorphic(&q, &Arc::new(FinCat::chain(3)), 1000).unwrap().is_some());
    }

    #[test]
    fn idempotent_collapsed_to_identity() {
        // e;e = e on one object; e ~ id collapses to the terminal category.
        let c = Arc::new(FinCat::build(vec!["x".into()], vec![("e".into(), Obj(0), Obj(0))], |_, _| Some(Mor(1))).unwrap());
        let (q, _) = quotient(&c, &RelationPair::new().sequences(vec![Mor(1)], vec![Mor(0)]), 100).unwrap();
        assert_eq!(q.num_morphisms(), 1);
    }

    #[test]
    fn relation_must_be_composable() {
        let c = parallel_pair();
        let r = RelationPair::new().sequences(vec![Mor(2), Mor(3)], vec![Mor(2)]);
        assert!(matches!(saturate(&c, &r, 100), Err(Error::InvalidRelation(_))));
    }

    #[test]
    fn universal_check_on_parallel_pair() {
        let c = parallel_pair();
        let r = RelationPair::new().sequences(vec![Mor(2)], vec![Mor(3)]);
        let arrow = Arc::new(FinCat::arrow());
        let f = FinFunctor::from_generators(c.clone(), arrow.clone(), vec![Obj(0), Obj(1)], vec![Mor(2), Mor(2)]).unwrap();
        let g = quotient_universal_check(&c, &r, &f, 100).unwrap();
        let p = saturate(&c, &r, 100).unwrap();
        // Independent check: exactly one functor out of the quotient factors f.
        let factoring = enumerate_functors(&p.quotient, &arrow, 10_000)
            .unwrap()
            .into_iter()
            .filter(|h| {
                let comp = p.projection.then(h).unwrap();
                comp.obj_map() == f.obj_map() && comp.mor_map() == f.mor_map()
            })
            .count();
        assert_eq!(factoring, 1);
        assert_eq!(g.obj_map(), &[Obj(0), Obj(1)]);
    }

    #[test]
    fn universal_check_rejects_bad_functor() {
        let c = Arc::new(FinCat::discrete(["x", "y"]));
        let r = RelationPair::new().objects(Obj(0), Obj(1));
        let d = Arc::new(FinCat::discrete(["p", "q"]));
        let f = FinFunctor::new(c.clone(), d, vec![Obj(0), Obj(1)], vec![Mor(0), Mor(1)]).unwrap();
        assert!(matches!(quotient_universal_check(&c, &r, &f, 100), Err(Error::ConditionsViolated(_))));
    }
}
