use std::collections::HashMap;
use std::sync::Arc;

use super::saturate::{saturate, RelationPair, UnionFind};
use crate::error::{Error, Result};
use crate::fincat::{coproduct, is_acyclic, Coproduct, is_sieve, same_category, FinCat, FinFunctor, Mor, Obj, SieveMode};

/// Quotient of the common target by `~_{F=G}` and the coequalizing functor.
pub fn coequalizer(f: &FinFunctor, g: &FinFunctor, cap: usize) -> Result<(Arc<FinCat>, FinFunctor)> {
    if !same_category(f.source(), g.source()) || !same_category(f.target(), g.target()) {
        return Err(Error::PreconditionViolated("coequalizer of non-parallel functors".into()));
    }
    let c = f.source();
    let mut r = RelationPair::new();
    for x in c.objects() {
        if f.obj(x) != g.obj(x) {
            r.object_pairs.push((f.obj(x), g.obj(x)));
        }
    }
    for m in c.non_identity() {
        if f.mor(m) != g.mor(m) {
            r.sequence_pairs.push((vec![f.mor(m)], vec![g.mor(m)]));
        }
    }
    let p = saturate(f.target(), &r, cap)?;
    Ok((p.quotient, p.projection))
}

/// A pushout together with its two cocone legs.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub category: Arc<FinCat>,
    /// `B -> P`
    pub left: FinFunctor,
    /// `C -> P`
    pub right: FinFunctor,
}

/// Pushout of `B <-i- A -f-> C` as the coequalizer of the two composites
/// into `B + C`.
pub fn pushout(i: &FinFunctor, f: &FinFunctor, cap: usize) -> Result<Pushout> {
    if !same_category(i.source(), f.source()) {
        return Err(Error::PreconditionViolated("span legs have different sources".into()));
    }
    let cp = coproduct(&[i.target().clone(), f.target().clone()]);
    let via_b = i.then(&cp.injections[0])?;
    let via_c = f.then(&cp.injections[1])?;
    let (category, q) = coequalizer(&via_b, &via_c, cap)?;
    Ok(Pushout {
        left: cp.injections[0].then(&q)?,
        right: cp.injections[1].then(&q)?,
        category,
    })
}

/// Pushout of a sieve `i: A -> B` along `f: A -> C` of acyclic categories,
/// built from normal forms without any congruence saturation.
///
/// Objects are `B \ i(A)` followed by `C`. Morphisms are those of `B` away
/// from `i(A)`, those of `C`, and classes of crossing pairs
/// `(g: c -> f(a), h: i(a) -> b)` under `(g ; f(u), h) ~ (g, i(u) ; h)`.
pub fn sieve_pushout_direct(i: &FinFunctor, f: &FinFunctor) -> Result<Pushout> {
    if !same_category(i.source(), f.source()) {
        return Err(Error::PreconditionViolated("span legs have different sources".into()));
    }
    let (a, b, c) = (i.source(), i.target(), f.target());
    for (name, cat) in [("A", a), ("B", b), ("C", c)] {
        if !is_acyclic(cat) {
            return Err(Error::PreconditionViolated(format!("{name} is not acyclic")));
        }
    }
    if !is_sieve(i, SieveMode::Sieve).map_err(|_| Error::PreconditionViolated("i is not an embedding".into()))? {
        return Err(Error::PreconditionViolated("i is not a sieve".into()));
    }

    let mut a_of_b = vec![None; b.num_objects()];
    for x in a.objects() {
        a_of_b[i.obj(x).0] = Some(x);
    }
    let outside: Vec<Obj> = b.objects().filter(|y| a_of_b[y.0].is_none()).collect();
    let mut new_of_b = vec![usize::MAX; b.num_objects()];
    for (k, y) in outside.iter().enumerate() {
        new_of_b[y.0] = k;
    }
    let nb = outside.len();
    let c_obj = |x: Obj| Obj(nb + x.0);
    // Object of P for each object of B.
    let p_obj_of_b = |y: Obj| match a_of_b[y.0] {
        Some(x) => c_obj(f.obj(x)),
        None => Obj(new_of_b[y.0]),
    };

    let mut objects: Vec<String> = outside.iter().map(|&y| format!("0.{}", b.obj_name(y))).collect();
    objects.extend(c.object_names().iter().map(|o| format!("1.{o}")));

    // Crossing pairs, indexed densely.
    let mut pairs: Vec<(Mor, Mor)> = Vec::new();
    let mut pair_index: HashMap<(Mor, Mor), usize> = HashMap::new();
    for x in a.objects() {
        let fx = f.obj(x);
        for cobj in c.objects() {
            for &g in c.hom(cobj, fx) {
                for &y in &outside {
                    for &h in b.hom(i.obj(x), y) {
                        pair_index.insert((g, h), pairs.len());
                        pairs.push((g, h));
                    }
                }
            }
        }
    }
    let mut uf = UnionFind::new(pairs.len());
    for u in a.non_identity() {
        let (x, x2) = (a.src(u), a.tgt(u));
        for cobj in c.objects() {
            for &g in c.hom(cobj, f.obj(x)) {
                let g2 = c.compose(g, f.mor(u));
                for &y in &outside {
                    for &h2 in b.hom(i.obj(x2), y) {
                        let h = b.compose(i.mor(u), h2);
                        uf.union(pair_index[&(g2, h2)], pair_index[&(g, h)]);
                    }
                }
            }
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut class_rep: Vec<usize> = Vec::new();
    let mut pair_class = vec![0; pairs.len()];
    for k in 0..pairs.len() {
        let root = uf.find(k);
        let cls = *class_of_root.entry(root).or_insert_with(|| {
            class_rep.push(k);
            class_rep.len() - 1
        });
        pair_class[k] = cls;
    }

    // Non-identity morphisms: B-outside, then C, then crossing classes.
    #[derive(Clone, Copy)]
    enum Kind {
        B(Mor),
        C(Mor),
        Cross(usize),
    }
    let mut kinds = Vec::new();
    let mut arrows = Vec::new();
    let mut index_b = HashMap::new();
    for m in b.non_identity() {
        if a_of_b[b.src(m).0].is_none() {
            index_b.insert(m, objects.len() + kinds.len());
            kinds.push(Kind::B(m));
            arrows.push((format!("0.{}", b.mor_name(m)), p_obj_of_b(b.src(m)), p_obj_of_b(b.tgt(m))));
        }
    }
    let mut index_c = HashMap::new();
    for m in c.non_identity() {
        index_c.insert(m, objects.len() + kinds.len());
        kinds.push(Kind::C(m));
        arrows.push((format!("1.{}", c.mor_name(m)), c_obj(c.src(m)), c_obj(c.tgt(m))));
    }
    let mut index_cross = Vec::with_capacity(class_rep.len());
    for (cls, &k) in class_rep.iter().enumerate() {
        let (g, h) = pairs[k];
        index_cross.push(objects.len() + kinds.len());
        kinds.push(Kind::Cross(cls));
        arrows.push((
            format!("(1.{},0.{})", c.mor_name(g), b.mor_name(h)),
            c_obj(c.src(g)),
            p_obj_of_b(b.tgt(h)),
        ));
    }
    let n = objects.len();
    let of_b = |m: Mor| -> Mor {
        if b.is_identity(m) {
            Mor(p_obj_of_b(b.src(m)).0)
        } else {
            Mor(index_b[&m])
        }
    };
    let of_c = |m: Mor| -> Mor {
        if c.is_identity(m) {
            Mor(c_obj(c.src(m)).0)
        } else {
            Mor(index_c[&m])
        }
    };
    let cross = |g: Mor, h: Mor| Mor(index_cross[pair_class[pair_index[&(g, h)]]]);
    let category = Arc::new(FinCat::build(objects, arrows, |x, y| {
        match (kinds[x.0 - n], kinds[y.0 - n]) {
            (Kind::B(p), Kind::B(q)) => Some(of_b(b.compose(p, q))),
            (Kind::C(p), Kind::C(q)) => Some(of_c(c.compose(p, q))),
            (Kind::C(p), Kind::Cross(cls)) => {
                let (g, h) = pairs[class_rep[cls]];
                Some(cross(c.compose(p, g), h))
            }
            (Kind::Cross(cls), Kind::B(q)) => {
                let (g, h) = pairs[class_rep[cls]];
                Some(cross(g, b.compose(h, q)))
            }
            _ => None,
        }
    })?);

    let left_mor: Vec<Mor> = b
        .morphisms()
        .map(|m| match (a_of_b[b.src(m).0], a_of_b[b.tgt(m).0]) {
            (None, _) => of_b(m),
            (Some(x), Some(x2)) => {
                // i is full on this hom-set since it is a sieve.
                let u = a.hom(x, x2).iter().copied().find(|&u| i.mor(u) == m).expect("sieve is full");
                of_c(f.mor(u))
            }
            (Some(x), None) => cross(c.id(f.obj(x)), m),
        })
        .collect();
    let left = FinFunctor::new(
        b.clone(),
        category.clone(),
        b.objects().map(p_obj_of_b).collect(),
        left_mor,
    )?;
    let right = FinFunctor::new(c.clone(), category.clone(), c.objects().map(c_obj).collect(), c.morphisms().map(of_c).collect())?;
    Ok(Pushout { category, left, right })
}

/// A diagram `I -> Cat` with functors for every index morphism.
#[derive(Clone, Debug)]
pub struct DiagramInCat {
    pub index: Arc<FinCat>,
    pub nodes: Vec<Arc<FinCat>>,
    /// One functor per index morphism, identities included.
    pub edges: Vec<FinFunctor>,
}

impl DiagramInCat {
    /// `edges` gives the functors for the non-identity index morphisms;
    /// identities are filled in and functoriality is checked.
    pub fn new(index: Arc<FinCat>, nodes: Vec<Arc<FinCat>>, edges: Vec<FinFunctor>) -> Result<DiagramInCat> {
        if nodes.len() != index.num_objects() || edges.len() != index.num_non_identity() {
            return Err(Error::PreconditionViolated("diagram sizes do not match the index".into()));
        }
        let mut all: Vec<FinFunctor> = nodes.iter().map(|c| FinFunctor::identity(c.clone())).collect();
        all.extend(edges);
        let d = DiagramInCat { index, nodes, edges: all };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<()> {
        let idx = &self.index;
        for u in idx.non_identity() {
            let e = &self.edges[u.0];
            if !same_category(e.source(), &self.nodes[idx.src(u).0]) || !same_category(e.target(), &self.nodes[idx.tgt(u).0]) {
                return Err(Error::PreconditionViolated(format!(
                    "edge {} has the wrong endpoints",
                    idx.mor_name(u)
                )));
            }
        }
        for (u, v, w) in idx.nontrivial_composites() {
            let comp = self.edges[u.0].then(&self.edges[v.0])?;
            if comp.obj_map() != self.edges[w.0].obj_map() || comp.mor_map() != self.edges[w.0].mor_map() {
                return Err(Error::PreconditionViolated(format!(
                    "diagram does not preserve {};{}",
                    idx.mor_name(u),
                    idx.mor_name(v)
                )));
            }
        }
        Ok(())
    }

    pub fn edge(&self, u: Mor) -> &FinFunctor {
        &self.edges[u.0]
    }
}

/// A colimit with its cocone, one leg per index object.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub category: Arc<FinCat>,
    pub cocone: Vec<FinFunctor>,
}

/// The coproduct of the nodes and the relation whose quotient is the colimit.
pub fn colimit_presentation(d: &DiagramInCat) -> (Coproduct, RelationPair) {
    let cp = coproduct(&d.nodes);
    let idx = &d.index;
    let mut r = RelationPair::new();
    for u in idx.non_identity() {
        let (s, t) = (idx.src(u), idx.tgt(u));
        let e = d.edge(u);
        let (js, jt) = (&cp.injections[s.0], &cp.injections[t.0]);
        for x in d.nodes[s.0].objects() {
            r.object_pairs.push((js.obj(x), jt.obj(e.obj(x))));
        }
        for m in d.nodes[s.0].non_identity() {
            r.sequence_pairs.push((vec![js.mor(m)], vec![jt.mor(e.mor(m))]));
        }
    }
    (cp, r)
}

/// Colimit as a quotient of the coproduct of the nodes.
pub fn finite_colimit(d: &DiagramInCat, cap: usize) -> Result<Colimit> {
    let (cp, r) = colimit_presentation(d);
    let p = saturate(&cp.category, &r, cap)?;
    let cocone = cp.injections.iter().map(|j| j.then(&p.projection)).collect::<Result<Vec<_>>>()?;
    Ok(Colimit {
        category: p.quotient,
        cocone,
    })
}

/// The functor out of a colimit induced by a compatible family of functors.
/// `legs[k] = (cocone leg into the colimit, functor into target)`; the
/// cocone legs must jointly generate the colimit.
pub fn induced_functor(legs: &[(&FinFunctor, &FinFunctor)], target: &Arc<FinCat>) -> Result<FinFunctor> {
    let Some((first, _)) = legs.first() else {
        return Err(Error::PreconditionViolated("no cocone legs".into()));
    };
    let p = first.target().clone();
    let mut obj: Vec<Option<Obj>> = vec![None; p.num_objects()];
    let mut mor: Vec<Option<Mor>> = vec![None; p.num_morphisms()];
    let clash = || Error::NotAFunctor("family is not compatible with the cocone".into());
    for (leg, h) in legs {
        for x in leg.source().objects() {
            let slot = &mut obj[leg.obj(x).0];
            if slot.is_some_and(|o| o != h.obj(x)) {
                return Err(clash());
            }
            *slot = Some(h.obj(x));
        }
        for m in leg.source().morphisms() {
            let slot = &mut mor[leg.mor(m).0];
            if slot.is_some_and(|o| o != h.mor(m)) {
                return Err(clash());
            }
            *slot = Some(h.mor(m));
        }
    }
    let mut into = vec![Vec::new(); p.num_objects()];
    for m in p.morphisms() {
        into[p.tgt(m).0].push(m);
    }
    let mut work: Vec<Mor> = p.morphisms().filter(|m| mor[m.0].is_some()).collect();
    while let Some(f) = work.pop() {
        let fi = mor[f.0].expect("assigned");
        let mut pairs = Vec::new();
        for &g in p.out_of(p.tgt(f)) {
            if let Some(gi) = mor[g.0] {
                pairs.push((p.compose(f, g), fi, gi));
            }
        }
        for &e in &into[p.src(f).0] {
            if let Some(ei) = mor[e.0] {
                pairs.push((p.compose(e, f), ei, fi));
            }
        }
        for (c, a, b) in pairs {
            let img = target.compose(a, b);
            match mor[c.0] {
                Some(o) if o != img => return Err(clash()),
                Some(_) => {}
                None => {
                    mor[c.0] = Some(img);
                    work.push(c);
                }
            }
        }
    }
    let obj: Option<Vec<Obj>> = obj.into_iter().collect();
    let mor: Option<Vec<Mor>> = mor.into_iter().collect();
    match (obj, mor) {
        (Some(o), Some(m)) => FinFunctor::new(p, target.clone(), o, m),
        _ => Err(Error::PreconditionViolated("cocone legs do not generate the colimit".into())),
    }
}

impl Pushout {
    /// `P -> T` from `B -> T` and `C -> T` agreeing on `A`.
    pub fn induced(&self, from_b: &FinFunctor, from_c: &FinFunctor) -> Result<FinFunctor> {
        induced_functor(&[(&self.left, from_b), (&self.right, from_c)], from_b.target())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::DEFAULT_CAP;
    use crate::fincat::{are_isomorphic, full_subcategory};

    fn arrow_named(a: &str, b: &str, f: &str) -> Arc<FinCat> {
        Arc::new(FinCat::build(vec![a.into(), b.into()], vec![(f.into(), Obj(0), Obj(1))], |_, _| None).unwrap())
    }

    fn point_into(c: &Arc<FinCat>, x: Obj) -> FinFunctor {
        let pt = Arc::new(FinCat::discrete(["a"]));
        FinFunctor::new(pt, c.clone(), vec![x], vec![c.id(x)]).unwrap()
    }

    #[test]
    fn coequalizer_of_equal_functors_is_identity() {
        let d = Arc::new(FinCat::chain(3));
        let f = FinFunctor::identity(d.clone());
        let (q, proj) = coequalizer(&f, &f, DEFAULT_CAP).unwrap();
        assert!(are_isomorphic(&q, &d, 10_000).unwrap().is_some());
        assert!(proj.is_isomorphism());
    }

    #[test]
    fn coequalizing_arrow_endpoints_explodes() {
        let d = Arc::new(FinCat::arrow());
        let f = point_into(&d, Obj(0));
        let g = FinFunctor::new(f.source().clone(), d.clone(), vec![Obj(1)], vec![Mor(1)]).unwrap();
        assert!(matches!(coequalizer(&f, &g, 1000), Err(Error::GrowthExceeded { .. })));
    }

    #[test]
    fn coequalizer_gluing_two_arrows() {
        let a = Arc::new(FinCat::arrow());
        let d = coproduct(&[a.clone(), a]).category;
        let c = Arc::new(FinCat::discrete(["x", "y"]));
        let (b0, c1, d1) = (Obj(1), Obj(2), Obj(3));
        let f = FinFunctor::new(c.clone(), d.clone(), vec![b0, d1], vec![Mor(1), Mor(3)]).unwrap();
        let g = FinFunctor::new(c, d, vec![c1, d1], vec![Mor(2), Mor(3)]).unwrap();
        let (q, _) = coequalizer(&f, &g, DEFAULT_CAP).unwrap();
        assert_eq!((q.num_objects(), q.num_non_identity()), (3, 3));
    }

    #[test]
    fn pushout_examples() {
        let pt = Arc::new(FinCat::discrete(["a"]));
        let b = arrow_named("a", "b", "f");
        let c = arrow_named("a", "c", "g");
        let i = FinFunctor::new(pt.clone(), b.clone(), vec![Obj(0)], vec![Mor(0)]).unwrap();
        let f = FinFunctor::new(pt.clone(), c.clone(), vec![Obj(0)], vec![Mor(0)]).unwrap();
        let p = pushout(&i, &f, DEFAULT_CAP).unwrap();
        assert_eq!(p.category.num_objects(), 3);
        assert_eq!(p.category.num_non_identity(), 2);
        let glued = p.left.obj(Obj(0));
        assert_eq!(glued, p.right.obj(Obj(0)));
        for y in p.category.objects().filter(|&y| y != glued) {
            assert_eq!(p.category.hom(glued, y).len(), 1);
            assert!(p.category.hom(y, glued).is_empty());
        }
        assert_eq!(i.then(&p.left).unwrap().mor_map(), f.then(&p.right).unwrap().mor_map());

        let direct = sieve_pushout_direct(&i, &f).unwrap();
        assert!(are_isomorphic(&direct.category, &p.category, 10_000).unwrap().is_some());

        // Along the identity.
        let id = FinFunctor::identity(pt.clone());
        let p2 = pushout(&id, &f, DEFAULT_CAP).unwrap();
        assert!(are_isomorphic(&p2.category, &c, 1000).unwrap().is_some());
        let d2 = sieve_pushout_direct(&id, &f).unwrap();
        assert!(are_isomorphic(&d2.category, &c, 1000).unwrap().is_some());
    }

    #[test]
    fn pushout_over_empty_is_coproduct() {
        let b = Arc::new(FinCat::chain(3));
        let c = arrow_named("x", "y", "h");
        let i = FinFunctor::from_empty(b.clone());
        let f = FinFunctor::new(i.source().clone(), c.clone(), vec![], vec![]).unwrap();
        let p = pushout(&i, &f, DEFAULT_CAP).unwrap();
        let cp = coproduct(&[b, c]);
        assert!(are_isomorphic(&p.category, &cp.category, 10_000).unwrap().is_some());
        let direct = sieve_pushout_direct(&i, &f).unwrap();
        assert!(are_isomorphic(&direct.category, &cp.category, 10_000).unwrap().is_some());
    }

    #[test]
    fn direct_pushout_identifies_crossing_pairs() {
        // A = {0<1} is a sieve in B = {0<1<2}; C = {0<1} with A collapsed onto 1.
        let b = Arc::new(FinCat::chain(3));
        let (a, i) = full_subcategory(&b, &[Obj(0), Obj(1)]);
        let c = Arc::new(FinCat::chain(2));
        let f = FinFunctor::new(a.clone(), c.clone(), vec![Obj(1), Obj(1)], vec![Mor(1), Mor(1), Mor(1)]).unwrap();
        let p = pushout(&i, &f, DEFAULT_CAP).unwrap();
        let direct = sieve_pushout_direct(&i, &f).unwrap();
        assert!(are_isomorphic(&direct.category, &p.category, 10_000).unwrap().is_some());
        assert_eq!(direct.category.num_objects(), 3);
    }

    #[test]
    fn direct_pushout_rejects_non_sieve() {
        let b = arrow_named("a", "b", "f");
        let pt = Arc::new(FinCat::discrete(["x"]));
        let i = FinFunctor::new(pt.clone(), b, vec![Obj(1)], vec![Mor(1)]).unwrap();
        let f = FinFunctor::identity(pt);
        assert!(matches!(sieve_pushout_direct(&i, &f), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn colimit_examples() {
        let c = Arc::new(FinCat::chain(3));
        let one = Arc::new(FinCat::terminal());
        let d = DiagramInCat::new(one, vec![c.clone()], vec![]).unwrap();
        let col = finite_colimit(&d, DEFAULT_CAP).unwrap();
        assert!(are_isomorphic(&col.category, &c, 10_000).unwrap().is_some());

        let disc = Arc::new(FinCat::discrete(["p", "q"]));
        let a = Arc::new(FinCat::arrow());
        let d = DiagramInCat::new(disc, vec![c.clone(), a.clone()], vec![]).unwrap();
        let col = finite_colimit(&d, DEFAULT_CAP).unwrap();
        let cp = coproduct(&[c, a]).category;
        assert!(are_isomorphic(&col.category, &cp, 10_000).unwrap().is_some());
    }

    #[test]
    fn span_colimit_matches_pushout() {
        let pt = Arc::new(FinCat::discrete(["a"]));
        let b = arrow_named("a", "b", "f");
        let c = arrow_named("a", "c", "g");
        let i = FinFunctor::new(pt.clone(), b.clone(), vec![Obj(0)], vec![Mor(0)]).unwrap();
        let f = FinFunctor::new(pt.clone(), c.clone(), vec![Obj(0)], vec![Mor(0)]).unwrap();
        let span = Arc::new(
            FinCat::build(
                vec!["A".into(), "B".into(), "C".into()],
                vec![("i".into(), Obj(0), Obj(1)), ("f".into(), Obj(0), Obj(2))],
                |_, _| None,
            )
            .unwrap(),
        );
        let d = DiagramInCat::new(span, vec![pt, b, c], vec![i.clone(), f.clone()]).unwrap();
        let col = finite_colimit(&d, DEFAULT_CAP).unwrap();
        let p = pushout(&i, &f, DEFAULT_CAP).unwrap();
        assert!(are_isomorphic(&col.category, &p.category, 10_000).unwrap().is_some());
    }
}
