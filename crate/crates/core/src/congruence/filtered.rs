use std::collections::HashMap;
use std::sync::Arc;

use super::colimits::{Colimit, DiagramInCat};
use super::saturate::UnionFind;
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Mor, Obj};

/// Nonempty, every pair of objects has a cocone, every parallel pair is
/// equalized by some morphism out of the common target.
pub fn is_filtered(i: &FinCat) -> bool {
    if i.num_objects() == 0 {
        return false;
    }
    let joinable = i.objects().all(|x| {
        i.objects()
            .all(|y| i.objects().any(|z| !i.hom(x, z).is_empty() && !i.hom(y, z).is_empty()))
    });
    joinable
        && i.objects().all(|x| {
            i.objects().all(|y| {
                let hom = i.hom(x, y);
                hom.iter().all(|&f| {
                    hom.iter()
                        .all(|&g| f == g || i.out_of(y).iter().any(|&h| i.compose(f, h) == i.compose(g, h)))
                })
            })
        })
}

/// Elements `(index object, element)` glued whenever two of them have equal
/// images at some common later stage.
struct Glued {
    members: Vec<(Obj, usize)>,
    class: Vec<usize>,
    offset: Vec<usize>,
    classes: usize,
}

impl Glued {
    fn class_of(&self, i: Obj, x: usize) -> usize {
        self.class[self.offset[i.0] + x]
    }
}

fn glue(d: &DiagramInCat, size: impl Fn(&FinCat) -> usize, image: impl Fn(&FinFunctor, usize) -> usize) -> Glued {
    let idx = &d.index;
    let mut members = Vec::new();
    let mut offset = Vec::with_capacity(idx.num_objects());
    for i in idx.objects() {
        offset.push(members.len());
        members.extend((0..size(&d.nodes[i.0])).map(|x| (i, x)));
    }
    let mut uf = UnionFind::new(members.len());
    let mut bucket: HashMap<(Obj, usize), usize> = HashMap::new();
    for (k, &(i, x)) in members.iter().enumerate() {
        for &u in idx.out_of(i) {
            let key = (idx.tgt(u), image(d.edge(u), x));
            match bucket.get(&key) {
                Some(&other) => {
                    uf.union(other, k);
                }
                None => {
                    bucket.insert(key, k);
                }
            }
        }
    }
    let mut class = vec![0; members.len()];
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for k in 0..members.len() {
        let root = uf.find(k);
        let next = seen.len();
        class[k] = *seen.entry(root).or_insert(next);
    }
    Glued {
        members,
        class,
        offset,
        classes: seen.len(),
    }
}

/// Colimit over a filtered index computed on underlying sets: objects and
/// morphisms are glued when they agree at some later stage, and composites
/// are formed at a stage where both factors meet.
pub fn filtered_colimit(d: &DiagramInCat) -> Result<Colimit> {
    let idx = &d.index;
    if !is_filtered(idx) {
        return Err(Error::NotFiltered);
    }
    let objs = glue(d, |c| c.num_objects(), |e, x| e.obj(Obj(x)).0);
    let mors = glue(d, |c| c.num_morphisms(), |e, m| e.mor(Mor(m)).0);

    // First member of each class, in diagram order.
    let firsts = |g: &Glued| {
        let mut first = vec![usize::MAX; g.classes];
        for (k, &c) in g.class.iter().enumerate().rev() {
            first[c] = k;
        }
        first
    };
    let obj_first = firsts(&objs);
    let mor_first = firsts(&mors);

    let names: Vec<String> = obj_first
        .iter()
        .map(|&k| {
            let (i, x) = objs.members[k];
            format!("{}.{}", idx.obj_name(i), d.nodes[i.0].obj_name(Obj(x)))
        })
        .collect();
    let mor_src = |k: usize| {
        let (i, m) = mors.members[k];
        objs.class_of(i, d.nodes[i.0].src(Mor(m)).0)
    };
    let mor_tgt = |k: usize| {
        let (i, m) = mors.members[k];
        objs.class_of(i, d.nodes[i.0].tgt(Mor(m)).0)
    };

    // Morphism classes containing an identity become identities.
    let mut index = vec![usize::MAX; mors.classes];
    for (k, &(i, m)) in mors.members.iter().enumerate() {
        let c = &d.nodes[i.0];
        if c.is_identity(Mor(m)) {
            index[mors.class[k]] = objs.class_of(i, m);
        }
    }
    let n = objs.classes;
    let mut arrows = Vec::new();
    let mut arrow_first = Vec::new();
    for (cls, &k) in mor_first.iter().enumerate() {
        if index[cls] == usize::MAX {
            index[cls] = n + arrows.len();
            let (i, m) = mors.members[k];
            arrows.push((
                format!("{}.{}", idx.obj_name(i), d.nodes[i.0].mor_name(Mor(m))),
                Obj(mor_src(k)),
                Obj(mor_tgt(k)),
            ));
            arrow_first.push(k);
        }
    }
    let compose = |k1: usize, k2: usize| -> Option<Mor> {
        let (i, f) = mors.members[k1];
        let (j, g) = mors.members[k2];
        for kk in idx.objects() {
            for &u in idx.hom(i, kk) {
                for &v in idx.hom(j, kk) {
                    let (fu, gv) = (d.edge(u).mor(Mor(f)), d.edge(v).mor(Mor(g)));
                    let ck = &d.nodes[kk.0];
                    if ck.tgt(fu) == ck.src(gv) {
                        let h = ck.compose(fu, gv);
                        return Some(Mor(index[mors.class_of(kk, h.0)]));
                    }
                }
            }
        }
        None
    };
    let category = Arc::new(FinCat::build(names, arrows, |a, b| {
        compose(arrow_first[a.0 - n], arrow_first[b.0 - n])
    })?);

    let cocone = idx
        .objects()
        .map(|i| {
            let c = &d.nodes[i.0];
            FinFunctor::new(
                c.clone(),
                category.clone(),
                c.objects().map(|x| Obj(objs.class_of(i, x.0))).collect(),
                c.morphisms().map(|m| Mor(index[mors.class_of(i, m.0)])).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Colimit { category, cocone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{finite_colimit, DEFAULT_CAP};
    use crate::fincat::{are_isomorphic, full_subcategory};

    #[test]
    fn filtered_examples() {
        assert!(is_filtered(&FinCat::terminal()));
        assert!(!is_filtered(&FinCat::discrete(["a", "b"])));
        assert!(is_filtered(&FinCat::chain(3)));
        assert!(!is_filtered(&FinCat::empty()));
        // Parallel pair without a coequalizing morphism.
        let pp = FinCat::build(
            vec!["a".into(), "b".into()],
            vec![("f".into(), Obj(0), Obj(1)), ("g".into(), Obj(0), Obj(1))],
            |_, _| None,
        )
        .unwrap();
        assert!(!is_filtered(&pp));
    }

    #[test]
    fn chain_of_inclusions_is_absorbed_by_the_top() {
        let top = Arc::new(FinCat::chain(3));
        let (s0, i0) = full_subcategory(&top, &[Obj(0)]);
        let (s1, i1) = full_subcategory(&top, &[Obj(0), Obj(1)]);
        let j01 = FinFunctor::new(s0.clone(), s1.clone(), vec![Obj(0)], vec![Mor(0)]).unwrap();
        let index = Arc::new(FinCat::chain(3));
        // Index arrows in order 0<1, 0<2, 1<2.
        let d = DiagramInCat::new(index, vec![s0, s1, top.clone()], vec![j01, i0, i1]).unwrap();
        let col = filtered_colimit(&d).unwrap();
        assert!(are_isomorphic(&col.category, &top, 10_000).unwrap().is_some());
        let fin = finite_colimit(&d, DEFAULT_CAP).unwrap();
        assert!(are_isomorphic(&col.category, &fin.category, 10_000).unwrap().is_some());
    }

    #[test]
    fn trivial_monoid_index_gives_the_node() {
        let c = Arc::new(FinCat::arrow());
        let d = DiagramInCat::new(Arc::new(FinCat::terminal()), vec![c.clone()], vec![]).unwrap();
        let col = filtered_colimit(&d).unwrap();
        assert!(are_isomorphic(&col.category, &c, 1000).unwrap().is_some());
    }

    #[test]
    fn idempotent_index_collapses_along_the_idempotent() {
        // Index: one object with e;e = e. Node {a -> b}, e sends everything to b.
        let index = Arc::new(FinCat::build(vec!["*".into()], vec![("e".into(), Obj(0), Obj(0))], |_, _| Some(Mor(1))).unwrap());
        let c = Arc::new(FinCat::arrow());
        let e = FinFunctor::new(c.clone(), c.clone(), vec![Obj(1), Obj(1)], vec![Mor(1), Mor(1), Mor(1)]).unwrap();
        let d = DiagramInCat::new(index, vec![c], vec![e]).unwrap();
        let col = filtered_colimit(&d).unwrap();
        assert_eq!(col.category.num_morphisms(), 1);
        let fin = finite_colimit(&d, DEFAULT_CAP).unwrap();
        assert!(are_isomorphic(&col.category, &fin.category, 1000).unwrap().is_some());
    }

    #[test]
    fn non_filtered_index_is_rejected() {
        let c = Arc::new(FinCat::terminal());
        let d = DiagramInCat::new(Arc::new(FinCat::discrete(["p", "q"])), vec![c.clone(), c], vec![]).unwrap();
        assert!(matches!(filtered_colimit(&d), Err(Error::NotFiltered)));
    }
}
