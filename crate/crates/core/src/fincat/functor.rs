use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use crate::error::{Error, Result};

/// A functor between finite categories, stored as explicit object and
/// morphism maps (identities included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FinFunctor {
    /// Validates functoriality exhaustively.
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, obj_map: Vec<Obj>, mor_map: Vec<Mor>) -> Result<FinFunctor> {
        let f = FinFunctor {
            source,
            target,
            obj_map,
            mor_map,
        };
        f.check()?;
        Ok(f)
    }

    /// Builds a functor from an object map and the images of the
    /// non-identity morphisms only.
    pub fn from_generators(source: Arc<FinCat>, target: Arc<FinCat>, obj_map: Vec<Obj>, non_identity: Vec<Mor>) -> Result<FinFunctor> {
        if obj_map.len() != source.num_objects() || non_identity.len() != source.num_non_identity() {
            return Err(Error::NotAFunctor("map sizes do not match the source category".into()));
        }
        if obj_map.iter().any(|x| x.0 >= target.num_objects()) {
            return Err(Error::NotAFunctor("object image out of range".into()));
        }
        let mut mor_map: Vec<Mor> = obj_map.iter().map(|&x| target.id(x)).collect();
        mor_map.extend(non_identity);
        FinFunctor::new(source, target, obj_map, mor_map)
    }

    pub(crate) fn new_unchecked(source: Arc<FinCat>, target: Arc<FinCat>, obj_map: Vec<Obj>, mor_map: Vec<Mor>) -> FinFunctor {
        let f = FinFunctor {
            source,
            target,
            obj_map,
            mor_map,
        };
        debug_assert!(f.check().is_ok(), "{:?}", f.check());
        f
    }

    fn check(&self) -> Result<()> {
        let (c, d) = (&*self.source, &*self.target);
        if self.obj_map.len() != c.num_objects() || self.mor_map.len() != c.num_morphisms() {
            return Err(Error::NotAFunctor("map sizes do not match the source category".into()));
        }
        if self.obj_map.iter().any(|x| x.0 >= d.num_objects()) || self.mor_map.iter().any(|f| f.0 >= d.num_morphisms()) {
            return Err(Error::NotAFunctor("image index out of range".into()));
        }
        for x in c.objects() {
            if self.mor_map[x.0] != d.id(self.obj_map[x.0]) {
                return Err(Error::NotAFunctor(format!("identity of {} is not preserved", c.obj_name(x))));
            }
        }
        for f in c.morphisms() {
            let g = self.mor_map[f.0];
            if d.src(g) != self.obj_map[c.src(f).0] || d.tgt(g) != self.obj_map[c.tgt(f).0] {
                return Err(Error::NotAFunctor(format!("endpoints of {} are not preserved", c.mor_name(f))));
            }
        }
        for (f, g, h) in c.nontrivial_composites() {
            if d.compose(self.mor_map[f.0], self.mor_map[g.0]) != self.mor_map[h.0] {
                return Err(Error::NotAFunctor(format!(
                    "composite {};{} is not preserved",
                    c.mor_name(f),
                    c.mor_name(g)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCat>) -> FinFunctor {
        let obj_map = c.objects().collect();
        let mor_map = c.morphisms().collect();
        FinFunctor {
            source: c.clone(),
            target: c,
            obj_map,
            mor_map,
        }
    }

    /// The unique functor out of the empty category.
    pub fn from_empty(target: Arc<FinCat>) -> FinFunctor {
        FinFunctor {
            source: Arc::new(FinCat::empty()),
            target,
            obj_map: Vec::new(),
            mor_map: Vec::new(),
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn obj(&self, x: Obj) -> Obj {
        self.obj_map[x.0]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.mor_map[f.0]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn then(&self, next: &FinFunctor) -> Result<FinFunctor> {
        if !same_category(&self.target, &next.source) {
            return Err(Error::NotAFunctor("composite of non-composable functors".into()));
        }
        Ok(FinFunctor {
            source: self.source.clone(),
            target: next.target.clone(),
            obj_map: self.obj_map.iter().map(|&x| next.obj(x)).collect(),
            mor_map: self.mor_map.iter().map(|&f| next.mor(f)).collect(),
        })
    }

    /// Same functor with the target replaced by an equal category.
    pub fn retarget(&self, target: Arc<FinCat>) -> Result<FinFunctor> {
        if !same_category(&self.target, &target) {
            return Err(Error::NotAFunctor("retarget onto a different category".into()));
        }
        Ok(FinFunctor {
            target,
            ..self.clone()
        })
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.num_objects()];
        self.obj_map.iter().all(|x| !std::mem::replace(&mut seen[x.0], true))
    }

    pub fn is_injective_on_morphisms(&self) -> bool {
        let mut seen = vec![false; self.target.num_morphisms()];
        self.mor_map.iter().all(|f| !std::mem::replace(&mut seen[f.0], true))
    }

    /// Injective on each hom-set.
    pub fn is_faithful(&self) -> bool {
        let c = &*self.source;
        c.objects().all(|x| {
            c.objects().all(|y| {
                let mut imgs: Vec<Mor> = c.hom(x, y).iter().map(|&f| self.mor(f)).collect();
                imgs.sort();
                imgs.windows(2).all(|w| w[0] != w[1])
            })
        })
    }

    /// Surjective on each hom-set.
    pub fn is_full(&self) -> bool {
        let (c, d) = (&*self.source, &*self.target);
        c.objects().all(|x| {
            c.objects().all(|y| {
                let imgs: std::collections::HashSet<Mor> = c.hom(x, y).iter().map(|&f| self.mor(f)).collect();
                imgs.len() == d.hom(self.obj(x), self.obj(y)).len()
            })
        })
    }

    pub fn is_embedding(&self) -> bool {
        self.is_injective_on_objects() && self.is_faithful()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.num_objects() == self.target.num_objects()
            && self.source.num_morphisms() == self.target.num_morphisms()
            && self.is_injective_on_objects()
            && self.is_injective_on_morphisms()
    }

    pub fn is_surjective(&self) -> bool {
        let mut objs = vec![false; self.target.num_objects()];
        let mut mors = vec![false; self.target.num_morphisms()];
        self.obj_map.iter().for_each(|x| objs[x.0] = true);
        self.mor_map.iter().for_each(|f| mors[f.0] = true);
        objs.into_iter().all(|b| b) && mors.into_iter().all(|b| b)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<FinFunctor> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut obj_map = vec![Obj(0); self.obj_map.len()];
        let mut mor_map = vec![Mor(0); self.mor_map.len()];
        for (i, x) in self.obj_map.iter().enumerate() {
            obj_map[x.0] = Obj(i);
        }
        for (i, f) in self.mor_map.iter().enumerate() {
            mor_map[f.0] = Mor(i);
        }
        Some(FinFunctor::new_unchecked(self.target.clone(), self.source.clone(), obj_map, mor_map))
    }

    /// Formal dual `F^op: C^op -> D^op`.
    pub fn opposite(&self) -> FinFunctor {
        FinFunctor::new_unchecked(
            Arc::new(self.source.opposite()),
            Arc::new(self.target.opposite()),
            self.obj_map.clone(),
            self.mor_map.clone(),
        )
    }
}

/// Structural equality with a pointer fast path.
pub fn same_category(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_functorial_map() {
        let c = Arc::new(FinCat::arrow());
        let d = Arc::new(FinCat::arrow());
        let err = FinFunctor::from_generators(c, d, vec![Obj(1), Obj(0)], vec![Mor(2)]).unwrap_err();
        assert!(matches!(err, Error::NotAFunctor(_)));
    }

    #[test]
    fn identity_is_iso_and_composes() {
        let c = Arc::new(FinCat::chain(3));
        let id = FinFunctor::identity(c.clone());
        assert!(id.is_isomorphism());
        assert_eq!(id.then(&id).unwrap(), id);
        assert_eq!(id.inverse().unwrap(), id);
    }
}
