use std::collections::VecDeque;
use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use super::functor::{same_category, FinFunctor};
use super::ops::full_subcategory;
use super::search::FunctorSearch;
use crate::error::{Error, Result};

/// No non-identity endomorphisms and no pair of antiparallel morphisms.
pub fn is_acyclic(c: &FinCat) -> bool {
    c.objects().all(|x| {
        c.hom(x, x).len() == 1 && c.objects().all(|y| y == x || c.hom(x, y).is_empty() || c.hom(y, x).is_empty())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SieveMode {
    Sieve,
    Cosieve,
}

/// Whether the embedding `f` is a sieve (closed under precomposition) or a
/// cosieve (closed under postcomposition).
pub fn is_sieve(f: &FinFunctor, mode: SieveMode) -> Result<bool> {
    if !f.is_embedding() {
        return Err(Error::NotAnEmbedding);
    }
    let d = f.target();
    let mut in_obj = vec![false; d.num_objects()];
    let mut in_mor = vec![false; d.num_morphisms()];
    f.obj_map().iter().for_each(|x| in_obj[x.0] = true);
    f.mor_map().iter().for_each(|g| in_mor[g.0] = true);
    Ok(d.non_identity().all(|g| {
        let (near, far) = match mode {
            SieveMode::Sieve => (d.tgt(g), d.src(g)),
            SieveMode::Cosieve => (d.src(g), d.tgt(g)),
        };
        !in_obj[near.0] || (in_mor[g.0] && in_obj[far.0])
    }))
}

/// Smallest cosieve containing `seeds`: every object reachable from a seed,
/// as a full subcategory embedded into `c`. Objects keep `c`'s order.
pub fn cosieve_generated(c: &Arc<FinCat>, seeds: &[Obj]) -> FinFunctor {
    let mut keep = vec![false; c.num_objects()];
    let mut queue: VecDeque<Obj> = seeds.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        if std::mem::replace(&mut keep[x.0], true) {
            continue;
        }
        for &f in c.out_of(x) {
            if !keep[c.tgt(f).0] {
                queue.push_back(c.tgt(f));
            }
        }
    }
    let objs: Vec<Obj> = c.objects().filter(|x| keep[x.0]).collect();
    full_subcategory(c, &objs).1
}

/// Decomposition data exhibiting a sieve `i: A -> C` as a Dwyer map:
/// `i = factor ; cosieve_part`, `factor ; retraction = id_A`, and
/// `transformation[c]: factor(retraction(c)) -> c` natural in `c`.
#[derive(Clone, Debug)]
pub struct DwyerWitness {
    pub cosieve_part: FinFunctor,
    pub factor: FinFunctor,
    pub retraction: FinFunctor,
    /// Components indexed by the objects of the cosieve `C'`.
    pub transformation: Vec<Mor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotDwyerReason {
    NotASieve,
    NoRetractionTransformationPair,
}

#[derive(Clone, Debug)]
pub enum DwyerVerdict {
    Witness(Box<DwyerWitness>),
    NotDwyer(NotDwyerReason),
}

impl DwyerVerdict {
    pub fn is_dwyer(&self) -> bool {
        matches!(self, DwyerVerdict::Witness(_))
    }
}

impl DwyerWitness {
    /// Checks every defining condition against the original sieve `i`.
    pub fn validate(&self, i: &FinFunctor) -> std::result::Result<(), String> {
        let j = &self.cosieve_part;
        let f = &self.factor;
        let r = &self.retraction;
        if !is_sieve(j, SieveMode::Cosieve).unwrap_or(false) {
            return Err("cosieve part is not a cosieve".into());
        }
        let composite = f.then(j).map_err(|e| e.to_string())?;
        if composite.obj_map() != i.obj_map() || composite.mor_map() != i.mor_map() {
            return Err("factor ; cosieve part differs from the sieve".into());
        }
        let fr = f.then(r).map_err(|e| e.to_string())?;
        let id = FinFunctor::identity(f.source().clone());
        if fr.obj_map() != id.obj_map() || fr.mor_map() != id.mor_map() {
            return Err("retraction is not a retraction of the factor".into());
        }
        let cp = j.source();
        if self.transformation.len() != cp.num_objects() {
            return Err("transformation has the wrong number of components".into());
        }
        for c in cp.objects() {
            let eta = self.transformation[c.0];
            if cp.src(eta) != f.obj(r.obj(c)) || cp.tgt(eta) != c {
                return Err(format!("component at {} has the wrong type", cp.obj_name(c)));
            }
        }
        for a in f.source().objects() {
            if !cp.is_identity(self.transformation[f.obj(a).0]) {
                return Err("transformation is not the identity on the image of the factor".into());
            }
        }
        for u in cp.non_identity() {
            let lhs = cp.compose(self.transformation[cp.src(u).0], u);
            let rhs = cp.compose(f.mor(r.mor(u)), self.transformation[cp.tgt(u).0]);
            if lhs != rhs {
                return Err(format!("naturality fails at {}", cp.mor_name(u)));
            }
        }
        Ok(())
    }
}

/// Decides whether `i` is a Dwyer map.
///
/// The search only needs the cosieve generated by the image: any witness on
/// a larger cosieve restricts to one on the generated cosieve (it is a full
/// subcategory contained in every cosieve through the image).
pub fn is_dwyer(i: &FinFunctor, budget: u64) -> Result<DwyerVerdict> {
    if !i.is_embedding() || !is_sieve(i, SieveMode::Sieve)? {
        return Ok(DwyerVerdict::NotDwyer(NotDwyerReason::NotASieve));
    }
    let j = cosieve_generated(i.target(), i.obj_map());
    dwyer_on_cosieve(i, j, budget)
}

/// Searches a witness with the prescribed cosieve part `j`.
pub fn dwyer_on_cosieve(i: &FinFunctor, j: FinFunctor, budget: u64) -> Result<DwyerVerdict> {
    let a = i.source().clone();
    let cp = j.source().clone();
    let c = i.target();
    if !same_category(j.target(), c) {
        return Err(Error::PreconditionViolated("cosieve lives in another category".into()));
    }
    // Factor i through C'.
    let mut local_obj = vec![usize::MAX; c.num_objects()];
    for (k, x) in j.obj_map().iter().enumerate() {
        local_obj[x.0] = k;
    }
    let mut local_mor = vec![usize::MAX; c.num_morphisms()];
    for (k, g) in j.mor_map().iter().enumerate() {
        local_mor[g.0] = k;
    }
    if i.obj_map().iter().any(|x| local_obj[x.0] == usize::MAX) {
        return Err(Error::PreconditionViolated("cosieve does not contain the image".into()));
    }
    let factor = FinFunctor::new_unchecked(
        a.clone(),
        cp.clone(),
        i.obj_map().iter().map(|x| Obj(local_obj[x.0])).collect(),
        i.mor_map().iter().map(|g| Mor(local_mor[g.0])).collect(),
    );

    // Object-level search over (r(c), eta_c) pairs.
    let mut preimage = vec![None; cp.num_objects()];
    for x in a.objects() {
        preimage[factor.obj(x).0] = Some(x);
    }
    let mut choices: Vec<Vec<(Obj, Mor)>> = Vec::with_capacity(cp.num_objects());
    for y in cp.objects() {
        match preimage[y.0] {
            Some(x) => choices.push(vec![(x, cp.id(y))]),
            None => {
                let mut v = Vec::new();
                for x in a.objects().rev() {
                    for &eta in cp.hom(factor.obj(x), y) {
                        v.push((x, eta));
                    }
                }
                if v.is_empty() {
                    return Ok(DwyerVerdict::NotDwyer(NotDwyerReason::NoRetractionTransformationPair));
                }
                choices.push(v);
            }
        }
    }
    let mut search = ObjectSearch {
        a: &a,
        cp: &cp,
        factor: &factor,
        choices,
        assigned: vec![None; cp.num_objects()],
        nodes: 0,
        budget,
    };
    let order: Vec<Obj> = cp.objects().collect();
    let mut witness = None;
    search.run(&order, 0, &mut |assign| {
        let r_obj: Vec<Obj> = assign.iter().map(|p| p.expect("assigned").0).collect();
        let eta: Vec<Mor> = assign.iter().map(|p| p.expect("assigned").1).collect();
        let mut mor_cands: Vec<Option<Vec<Mor>>> = vec![None; cp.num_morphisms()];
        for u in cp.non_identity() {
            let (s, t) = (cp.src(u), cp.tgt(u));
            let lhs = cp.compose(eta[s.0], u);
            let allowed: Vec<Mor> = match (preimage[s.0], preimage[t.0]) {
                (Some(_), Some(_)) => {
                    // u lies in the image since A is a full subcategory of C' here.
                    let pre = factor.mor_map().iter().position(|&g| g == u);
                    pre.map(|k| vec![Mor(k)]).unwrap_or_default()
                }
                _ => a
                    .hom(r_obj[s.0], r_obj[t.0])
                    .iter()
                    .copied()
                    .filter(|&alpha| cp.compose(factor.mor(alpha), eta[t.0]) == lhs)
                    .collect(),
            };
            mor_cands[u.0] = Some(allowed);
        }
        let found = FunctorSearch::new(&cp, &a)
            .object_candidates(r_obj.iter().map(|&x| vec![x]).collect())
            .morphism_candidates(mor_cands)
            .budget(budget)
            .first(&cp, &a)?;
        Ok(found.map(|r| (r, eta)))
    }, &mut witness)?;

    Ok(match witness {
        Some((retraction, transformation)) => DwyerVerdict::Witness(Box::new(DwyerWitness {
            cosieve_part: j,
            factor,
            retraction,
            transformation,
        })),
        None => DwyerVerdict::NotDwyer(NotDwyerReason::NoRetractionTransformationPair),
    })
}

type Found = Option<(FinFunctor, Vec<Mor>)>;

struct ObjectSearch<'a> {
    a: &'a FinCat,
    cp: &'a FinCat,
    factor: &'a FinFunctor,
    choices: Vec<Vec<(Obj, Mor)>>,
    assigned: Vec<Option<(Obj, Mor)>>,
    nodes: u64,
    budget: u64,
}

impl ObjectSearch<'_> {
    /// A morphism `u: s -> t` between assigned objects must admit some
    /// `alpha: r(s) -> r(t)` with `f(alpha) ; eta_t = eta_s ; u`.
    fn locally_ok(&self, y: Obj) -> bool {
        let cp = self.cp;
        let check = |u: Mor| -> bool {
            let (s, t) = (cp.src(u), cp.tgt(u));
            let (Some((rs, es)), Some((rt, et))) = (self.assigned[s.0], self.assigned[t.0]) else {
                return true;
            };
            let lhs = cp.compose(es, u);
            self.a.hom(rs, rt).iter().any(|&alpha| cp.compose(self.factor.mor(alpha), et) == lhs)
        };
        cp.objects().all(|z| {
            cp.hom(y, z).iter().chain(cp.hom(z, y)).all(|&u| cp.is_identity(u) || check(u))
        })
    }

    fn run<F>(&mut self, order: &[Obj], k: usize, finish: &mut F, out: &mut Found) -> Result<bool>
    where
        F: FnMut(&[Option<(Obj, Mor)>]) -> Result<Found>,
    {
        if k == order.len() {
            if let Some(w) = finish(&self.assigned)? {
                *out = Some(w);
                return Ok(true);
            }
            return Ok(false);
        }
        let y = order[k];
        for idx in 0..self.choices[y.0].len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded { budget: self.budget });
            }
            self.assigned[y.0] = Some(self.choices[y.0][idx]);
            if self.locally_ok(y) && self.run(order, k + 1, finish, out)? {
                return Ok(true);
            }
        }
        self.assigned[y.0] = None;
        Ok(false)
    }
}
