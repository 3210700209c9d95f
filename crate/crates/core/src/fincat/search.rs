//! Backtracking search for functors between finite categories.
//!
//! Objects are assigned in a connectivity-driven order; right after an
//! object, every non-identity morphism whose endpoints are both assigned
//! gets its image. Each composition constraint is checked as soon as its
//! last member is assigned.

use std::ops::ControlFlow;
use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use super::functor::FinFunctor;
use crate::error::{Error, Result};

/// Default node budget for searches that expose one.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug)]
enum Step {
    Obj(Obj),
    Mor(Mor),
}

/// Configurable functor search. Candidates restrict the images; the search
/// always enforces functoriality.
pub struct FunctorSearch<'a> {
    source: &'a FinCat,
    target: &'a FinCat,
    obj_candidates: Option<Vec<Vec<Obj>>>,
    mor_candidates: Option<Vec<Option<Vec<Mor>>>>,
    injective: bool,
    budget: u64,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(source: &'a FinCat, target: &'a FinCat) -> Self {
        FunctorSearch {
            source,
            target,
            obj_candidates: None,
            mor_candidates: None,
            injective: false,
            budget: DEFAULT_BUDGET,
        }
    }

    /// Allowed images per source object, in the order they are tried.
    pub fn object_candidates(mut self, c: Vec<Vec<Obj>>) -> Self {
        assert_eq!(c.len(), self.source.num_objects());
        self.obj_candidates = Some(c);
        self
    }

    /// Allowed images per source morphism (`None` = unrestricted). Entries
    /// for identities are ignored.
    pub fn morphism_candidates(mut self, c: Vec<Option<Vec<Mor>>>) -> Self {
        assert_eq!(c.len(), self.source.num_morphisms());
        self.mor_candidates = Some(c);
        self
    }

    /// Only injective assignments on objects and morphisms.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn order(&self) -> Vec<Obj> {
        let c = self.source;
        let n = c.num_objects();
        let mut adj = vec![vec![0usize; n]; n];
        for f in c.non_identity() {
            let (s, t) = (c.src(f).0, c.tgt(f).0);
            if s != t {
                adj[s][t] += 1;
                adj[t][s] += 1;
            }
        }
        let mut placed = vec![false; n];
        let mut score = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&i| !placed[i])
                .max_by(|&a, &b| score[a].cmp(&score[b]).then(b.cmp(&a)))
                .expect("unplaced object");
            placed[next] = true;
            order.push(Obj(next));
            for j in 0..n {
                score[j] += adj[next][j];
            }
        }
        order
    }

    /// Visits every functor (as object and morphism maps) until the visitor
    /// breaks. Returns whether the visitor broke early.
    pub fn for_each<V>(&self, mut visit: V) -> Result<bool>
    where
        V: FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
    {
        let c = self.source;
        let order = self.order();
        let mut pos = vec![usize::MAX; c.num_objects()];
        for (i, x) in order.iter().enumerate() {
            pos[x.0] = i;
        }
        let mut steps = Vec::new();
        let mut step_of = vec![usize::MAX; c.num_morphisms()];
        let mut scheduled = vec![false; c.num_morphisms()];
        for &x in &order {
            step_of[x.0] = steps.len();
            steps.push(Step::Obj(x));
            for f in c.non_identity() {
                let (s, t) = (pos[c.src(f).0], pos[c.tgt(f).0]);
                if !scheduled[f.0] && s <= pos[x.0] && t <= pos[x.0] {
                    scheduled[f.0] = true;
                    step_of[f.0] = steps.len();
                    steps.push(Step::Mor(f));
                }
            }
        }
        let mut checks: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); steps.len()];
        for (f, g, h) in c.nontrivial_composites() {
            let at = step_of[f.0].max(step_of[g.0]).max(step_of[h.0]);
            checks[at].push((f, g, h));
        }
        let mut state = State {
            search: self,
            steps,
            checks,
            obj_img: vec![Obj(usize::MAX); c.num_objects()],
            mor_img: vec![Mor(usize::MAX); c.num_morphisms()],
            used_obj: vec![false; self.target.num_objects()],
            used_mor: vec![false; self.target.num_morphisms()],
            nodes: 0,
        };
        match state.go(0, &mut visit) {
            Err(e) => Err(e),
            Ok(ControlFlow::Break(())) => Ok(true),
            Ok(ControlFlow::Continue(())) => Ok(false),
        }
    }

    /// First functor in search order, if any.
    pub fn first(&self, source: &Arc<FinCat>, target: &Arc<FinCat>) -> Result<Option<FinFunctor>> {
        let mut found = None;
        self.for_each(|o, m| {
            found = Some(FinFunctor::new_unchecked(source.clone(), target.clone(), o.to_vec(), m.to_vec()));
            ControlFlow::Break(())
        })?;
        Ok(found)
    }

    pub fn collect(&self, source: &Arc<FinCat>, target: &Arc<FinCat>) -> Result<Vec<FinFunctor>> {
        let mut all = Vec::new();
        self.for_each(|o, m| {
            all.push(FinFunctor::new_unchecked(source.clone(), target.clone(), o.to_vec(), m.to_vec()));
            ControlFlow::Continue(())
        })?;
        Ok(all)
    }

    pub fn count(&self) -> Result<u64> {
        let mut n = 0u64;
        self.for_each(|_, _| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }
}

struct State<'s, 'a> {
    search: &'s FunctorSearch<'a>,
    steps: Vec<Step>,
    checks: Vec<Vec<(Mor, Mor, Mor)>>,
    obj_img: Vec<Obj>,
    mor_img: Vec<Mor>,
    used_obj: Vec<bool>,
    used_mor: Vec<bool>,
    nodes: u64,
}

impl State<'_, '_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.search.budget {
            return Err(Error::SearchBudgetExceeded {
                budget: self.search.budget,
            });
        }
        Ok(())
    }

    fn consistent(&self, step: usize) -> bool {
        let d = self.search.target;
        self.checks[step]
            .iter()
            .all(|&(f, g, h)| d.compose(self.mor_img[f.0], self.mor_img[g.0]) == self.mor_img[h.0])
    }

    fn go<V>(&mut self, step: usize, visit: &mut V) -> Result<ControlFlow<()>>
    where
        V: FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
    {
        if step == self.steps.len() {
            return Ok(visit(&self.obj_img, &self.mor_img));
        }
        let d = self.search.target;
        let injective = self.search.injective;
        match self.steps[step] {
            Step::Obj(x) => {
                let all: Vec<Obj>;
                let cands: &[Obj] = match &self.search.obj_candidates {
                    Some(c) => &c[x.0],
                    None => {
                        all = d.objects().collect();
                        &all
                    }
                };
                for &y in cands {
                    self.tick()?;
                    if injective && self.used_obj[y.0] {
                        continue;
                    }
                    self.obj_img[x.0] = y;
                    self.mor_img[x.0] = d.id(y);
                    if !self.consistent(step) {
                        continue;
                    }
                    if injective {
                        self.used_obj[y.0] = true;
                        self.used_mor[d.id(y).0] = true;
                    }
                    let r = self.go(step + 1, visit);
                    if injective {
                        self.used_obj[y.0] = false;
                        self.used_mor[d.id(y).0] = false;
                    }
                    if r? == ControlFlow::Break(()) {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
            Step::Mor(f) => {
                let c = self.search.source;
                let (s, t) = (self.obj_img[c.src(f).0], self.obj_img[c.tgt(f).0]);
                let restriction = self.search.mor_candidates.as_ref().and_then(|m| m[f.0].as_ref());
                for &g in d.hom(s, t) {
                    self.tick()?;
                    if let Some(allowed) = restriction {
                        if !allowed.contains(&g) {
                            continue;
                        }
                    }
                    if injective && self.used_mor[g.0] {
                        continue;
                    }
                    self.mor_img[f.0] = g;
                    if !self.consistent(step) {
                        continue;
                    }
                    if injective {
                        self.used_mor[g.0] = true;
                    }
                    let r = self.go(step + 1, visit);
                    if injective {
                        self.used_mor[g.0] = false;
                    }
                    if r? == ControlFlow::Break(()) {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// All functors `C -> D` in deterministic search order.
pub fn enumerate_functors(c: &Arc<FinCat>, d: &Arc<FinCat>, budget: u64) -> Result<Vec<FinFunctor>> {
    FunctorSearch::new(c, d).budget(budget).collect(c, d)
}

pub fn count_functors(c: &FinCat, d: &FinCat, budget: u64) -> Result<u64> {
    FunctorSearch::new(c, d).budget(budget).count()
}

fn object_signature(c: &FinCat, x: Obj) -> (usize, Vec<usize>, Vec<usize>) {
    let mut outs: Vec<usize> = c.objects().filter(|&y| y != x).map(|y| c.hom(x, y).len()).collect();
    let mut ins: Vec<usize> = c.objects().filter(|&y| y != x).map(|y| c.hom(y, x).len()).collect();
    outs.sort_unstable();
    ins.sort_unstable();
    (c.hom(x, x).len(), outs, ins)
}

/// An isomorphism `C -> D` if one exists.
pub fn are_isomorphic(c: &Arc<FinCat>, d: &Arc<FinCat>, budget: u64) -> Result<Option<FinFunctor>> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return Ok(None);
    }
    let dsig: Vec<_> = d.objects().map(|y| object_signature(d, y)).collect();
    let mut cands = Vec::with_capacity(c.num_objects());
    for x in c.objects() {
        let sig = object_signature(c, x);
        let list: Vec<Obj> = d.objects().filter(|y| dsig[y.0] == sig).collect();
        if list.is_empty() {
            return Ok(None);
        }
        cands.push(list);
    }
    // Hom-set sizes must match pairwise; enforced through injectivity plus
    // equal morphism counts.
    FunctorSearch::new(c, d)
        .object_candidates(cands)
        .injective()
        .budget(budget)
        .first(c, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn point_into_arrow_has_two_functors() {
        let n = count_functors(&FinCat::terminal(), &FinCat::arrow(), 1000).unwrap();
        assert_eq!(n, 2);
    }

    #[test]
    fn arrow_into_point_has_one_functor() {
        assert_eq!(count_functors(&FinCat::arrow(), &FinCat::terminal(), 1000).unwrap(), 1);
    }

    #[test]
    fn arrow_into_arrow_has_three_functors() {
        // Brute force: object maps (a,b) -> {aa, ab, ba, bb}; only ab and the
        // two constant maps admit an image for f.
        let c = arc(FinCat::arrow());
        let fs = enumerate_functors(&c, &c, 1000).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs.iter().filter(|f| f.is_isomorphism()).count(), 1);
    }

    #[test]
    fn isomorphism_checks() {
        let a = arc(FinCat::arrow());
        let relabelled = arc(FinCat::build(vec!["x".into(), "y".into()], vec![("g".into(), Obj(0), Obj(1))], |_, _| None).unwrap());
        assert!(are_isomorphic(&a, &relabelled, 1000).unwrap().is_some());
        assert!(are_isomorphic(&a, &a, 1000).unwrap().unwrap().is_isomorphism());
        assert!(are_isomorphic(&arc(FinCat::terminal()), &a, 1000).unwrap().is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let c = FinCat::discrete(["a", "b", "c", "d"]);
        let err = count_functors(&c, &c, 10).unwrap_err();
        assert!(matches!(err, Error::SearchBudgetExceeded { budget: 10 }));
    }

    #[test]
    fn empty_source_has_one_functor() {
        assert_eq!(count_functors(&FinCat::empty(), &FinCat::arrow(), 10).unwrap(), 1);
        assert_eq!(count_functors(&FinCat::terminal(), &FinCat::empty(), 10).unwrap(), 0);
    }
}
