use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use super::functor::FinFunctor;
use crate::error::Result;

/// Disjoint union of categories with its injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub category: Arc<FinCat>,
    pub injections: Vec<FinFunctor>,
}

/// Coproduct of a family. Identifiers are namespaced as `"<part>.<name>"`.
pub fn coproduct(parts: &[Arc<FinCat>]) -> Coproduct {
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    let mut obj_offset = Vec::with_capacity(parts.len());
    for (k, p) in parts.iter().enumerate() {
        obj_offset.push(objects.len());
        objects.extend(p.object_names().iter().map(|o| format!("{k}.{o}")));
    }
    let total_objects = objects.len();
    let mut mor_offset = Vec::with_capacity(parts.len());
    let mut owner = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        mor_offset.push(total_objects + arrows.len());
        for f in p.non_identity() {
            arrows.push((
                format!("{k}.{}", p.mor_name(f)),
                Obj(obj_offset[k] + p.src(f).0),
                Obj(obj_offset[k] + p.tgt(f).0),
            ));
            owner.push(k);
        }
    }
    // Map a coproduct morphism index back to (part, local morphism).
    let local = |m: Mor| -> (usize, Mor) {
        if m.0 < total_objects {
            let k = obj_offset.partition_point(|&o| o <= m.0) - 1;
            (k, Mor(m.0 - obj_offset[k]))
        } else {
            let k = owner[m.0 - total_objects];
            let n_k = parts[k].num_objects();
            (k, Mor(m.0 - mor_offset[k] + n_k))
        }
    };
    let global = |k: usize, m: Mor| -> Mor {
        let n_k = parts[k].num_objects();
        if m.0 < n_k {
            Mor(obj_offset[k] + m.0)
        } else {
            Mor(mor_offset[k] + m.0 - n_k)
        }
    };
    let category = Arc::new(
        FinCat::build(objects, arrows, |f, g| {
            let (k, lf) = local(f);
            let (_, lg) = local(g);
            Some(global(k, parts[k].compose(lf, lg)))
        })
        .expect("coproduct of valid categories is valid"),
    );
    let injections = parts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let obj_map = p.objects().map(|x| Obj(obj_offset[k] + x.0)).collect();
            let mor_map = p.morphisms().map(|f| global(k, f)).collect();
            FinFunctor::new_unchecked(p.clone(), category.clone(), obj_map, mor_map)
        })
        .collect();
    Coproduct { category, injections }
}

/// Full subcategory on `objects` (kept in the given order) with its inclusion.
pub fn full_subcategory(c: &Arc<FinCat>, objects: &[Obj]) -> (Arc<FinCat>, FinFunctor) {
    let mut local_obj = vec![usize::MAX; c.num_objects()];
    for (i, x) in objects.iter().enumerate() {
        local_obj[x.0] = i;
    }
    let mut global_mor: Vec<Mor> = objects.iter().map(|&x| c.id(x)).collect();
    let mut arrows = Vec::new();
    for f in c.non_identity() {
        let (s, t) = (local_obj[c.src(f).0], local_obj[c.tgt(f).0]);
        if s != usize::MAX && t != usize::MAX {
            arrows.push((c.mor_name(f).to_string(), Obj(s), Obj(t)));
            global_mor.push(f);
        }
    }
    let mut local_mor = vec![usize::MAX; c.num_morphisms()];
    for (i, f) in global_mor.iter().enumerate() {
        local_mor[f.0] = i;
    }
    let names = objects.iter().map(|&x| c.obj_name(x).to_string()).collect();
    let sub = Arc::new(
        FinCat::build(names, arrows, |f, g| Some(Mor(local_mor[c.compose(global_mor[f.0], global_mor[g.0]).0])))
            .expect("full subcategory of a valid category is valid"),
    );
    let inc = FinFunctor::new_unchecked(sub.clone(), c.clone(), objects.to_vec(), global_mor);
    (sub, inc)
}

/// `|objects| + |morphisms| + |composable pairs|`, identities counted.
pub fn smallness_bound(c: &FinCat) -> usize {
    c.num_objects() + c.num_morphisms() + c.composable_pairs()
}

/// Restricts the target of an injective-on-objects, faithful functor to
/// its image, returning the image category and the factorisation.
pub fn image_factorisation(f: &FinFunctor) -> Result<(Arc<FinCat>, FinFunctor, FinFunctor)> {
    let d = f.target();
    let mut objs: Vec<Obj> = f.obj_map().to_vec();
    objs.sort();
    objs.dedup();
    let (sub, inc) = full_subcategory(d, &objs);
    let mut local = vec![usize::MAX; d.num_morphisms()];
    for (i, &g) in inc.mor_map().iter().enumerate() {
        local[g.0] = i;
    }
    let obj_map = f.obj_map().iter().map(|x| Obj(objs.binary_search(x).expect("object in image"))).collect();
    let mor_map = f.mor_map().iter().map(|g| Mor(local[g.0])).collect();
    let corestricted = FinFunctor::new(f.source().clone(), sub.clone(), obj_map, mor_map)?;
    Ok((sub, corestricted, inc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coproduct_examples() {
        let empty = coproduct(&[]);
        assert_eq!(empty.category.num_objects(), 0);

        let pt = Arc::new(FinCat::terminal());
        let two = coproduct(&[pt.clone(), pt]);
        assert_eq!(two.category.num_objects(), 2);
        assert_eq!(two.category.num_non_identity(), 0);

        let a = Arc::new(FinCat::arrow());
        let c = coproduct(&[a.clone(), a]);
        assert_eq!(c.category.num_objects(), 4);
        assert_eq!(c.category.num_non_identity(), 2);
        assert!(c.category.hom(Obj(1), Obj(2)).is_empty());
        assert!(c.category.morphism_by_name("1.f").is_some());
        assert!(c.injections.iter().all(|i| i.is_embedding()));
    }

    #[test]
    fn smallness_bound_examples() {
        assert_eq!(smallness_bound(&FinCat::terminal()), 3);
        assert_eq!(smallness_bound(&FinCat::discrete(["a", "b"])), 6);
        assert_eq!(smallness_bound(&FinCat::arrow()), 9);
    }

    #[test]
    fn smallness_bound_matches_brute_force_pair_count() {
        // Independent count: all ordered pairs (g, h) with s(g) = t(h).
        for c in [FinCat::arrow(), FinCat::chain(3), FinCat::chain(4), FinCat::discrete(["x", "y", "z"])] {
            let mut pairs = 0;
            for g in c.morphisms() {
                for h in c.morphisms() {
                    if c.src(g) == c.tgt(h) {
                        pairs += 1;
                    }
                }
            }
            assert_eq!(smallness_bound(&c), c.num_objects() + c.num_morphisms() + pairs);
        }
    }

    #[test]
    fn full_subcategory_keeps_composites() {
        let c = Arc::new(FinCat::chain(4));
        let (sub, inc) = full_subcategory(&c, &[Obj(0), Obj(2), Obj(3)]);
        assert_eq!(sub.num_non_identity(), 3);
        assert!(inc.is_full() && inc.is_embedding());
    }
}
