use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{same_category, FinCat, FinFunctor, FunctorSearch, Mor, Obj};

/// A commuting square
///
/// ```text
///   x --top--> u
///   |          |
///  left      right
///   v          v
///   y -bottom-> v
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingSquare {
    pub left: FinFunctor,
    pub right: FinFunctor,
    pub top: FinFunctor,
    pub bottom: FinFunctor,
}

impl LiftingSquare {
    pub fn new(left: FinFunctor, right: FinFunctor, top: FinFunctor, bottom: FinFunctor) -> Result<LiftingSquare> {
        let shaped = same_category(left.source(), top.source())
            && same_category(left.target(), bottom.source())
            && same_category(right.source(), top.target())
            && same_category(right.target(), bottom.target());
        if !shaped {
            return Err(Error::PreconditionViolated("square sides do not meet at common corners".into()));
        }
        let sq = LiftingSquare { left, right, top, bottom };
        if !sq.commutes() {
            return Err(Error::NonCommutingSquare);
        }
        Ok(sq)
    }

    pub fn commutes(&self) -> bool {
        let a = self.top.then(&self.right).expect("shaped");
        let b = self.left.then(&self.bottom).expect("shaped");
        a.obj_map() == b.obj_map() && a.mor_map() == b.mor_map()
    }

    /// Both triangles commute for `h: y -> u`.
    pub fn is_lift(&self, h: &FinFunctor) -> bool {
        if !same_category(h.source(), self.left.target()) || !same_category(h.target(), self.right.source()) {
            return false;
        }
        let upper = self.left.then(h).expect("shaped");
        let lower = h.then(&self.right).expect("shaped");
        upper.obj_map() == self.top.obj_map()
            && upper.mor_map() == self.top.mor_map()
            && lower.obj_map() == self.bottom.obj_map()
            && lower.mor_map() == self.bottom.mor_map()
    }
}

/// First diagonal filler in search order, or `None` after exhausting all
/// candidates.
pub fn find_lift(sq: &LiftingSquare, budget: u64) -> Result<Option<FinFunctor>> {
    if !sq.commutes() {
        return Err(Error::NonCommutingSquare);
    }
    let (f, g) = (&sq.left, &sq.right);
    let (y, u) = (f.target(), g.source());
    // Images forced by the upper triangle.
    let mut forced_obj: Vec<Option<Obj>> = vec![None; y.num_objects()];
    let mut forced_mor: Vec<Option<Mor>> = vec![None; y.num_morphisms()];
    let mut clash = false;
    for x in f.source().objects() {
        let slot = &mut forced_obj[f.obj(x).0];
        clash |= slot.is_some_and(|o| o != sq.top.obj(x));
        *slot = Some(sq.top.obj(x));
    }
    for m in f.source().morphisms() {
        let slot = &mut forced_mor[f.mor(m).0];
        clash |= slot.is_some_and(|o| o != sq.top.mor(m));
        *slot = Some(sq.top.mor(m));
    }
    if clash {
        return Ok(None);
    }
    let objs: Vec<Vec<Obj>> = y
        .objects()
        .map(|b| match forced_obj[b.0] {
            Some(a) => {
                if g.obj(a) == sq.bottom.obj(b) {
                    vec![a]
                } else {
                    Vec::new()
                }
            }
            None => u.objects().filter(|&a| g.obj(a) == sq.bottom.obj(b)).collect(),
        })
        .collect();
    let mors: Vec<Option<Vec<Mor>>> = y
        .morphisms()
        .map(|m| {
            Some(match forced_mor[m.0] {
                Some(n) => vec![n],
                None => u.morphisms().filter(|&n| g.mor(n) == sq.bottom.mor(m)).collect(),
            })
        })
        .collect();
    FunctorSearch::new(y, u)
        .object_candidates(objs)
        .morphism_candidates(mors)
        .budget(budget)
        .first(y, u)
}

/// Every commuting square from `i` to `g`, bottom-major in search order.
pub fn enumerate_squares(i: &FinFunctor, g: &FinFunctor, budget: u64) -> Result<Vec<LiftingSquare>> {
    let (a, b, u, v) = (i.source(), i.target(), g.source(), g.target());
    let bottoms = FunctorSearch::new(b, v).budget(budget).collect(b, v)?;
    let mut out = Vec::new();
    for bottom in bottoms {
        let objs: Vec<Vec<Obj>> = a
            .objects()
            .map(|x| u.objects().filter(|&y| g.obj(y) == bottom.obj(i.obj(x))).collect())
            .collect();
        let mors: Vec<Option<Vec<Mor>>> = a
            .morphisms()
            .map(|m| Some(u.morphisms().filter(|&n| g.mor(n) == bottom.mor(i.mor(m))).collect()))
            .collect();
        let tops = FunctorSearch::new(a, u)
            .object_candidates(objs)
            .morphism_candidates(mors)
            .budget(budget)
            .collect(a, u)?;
        for top in tops {
            out.push(LiftingSquare::new(i.clone(), g.clone(), top, bottom.clone())?);
        }
    }
    Ok(out)
}

/// Unique functor into the terminal category.
pub fn to_terminal(c: &Arc<FinCat>) -> FinFunctor {
    let t = Arc::new(FinCat::terminal());
    FinFunctor::new(c.clone(), t, vec![Obj(0); c.num_objects()], vec![Mor(0); c.num_morphisms()]).expect("terminal")
}
