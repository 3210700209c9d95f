//! Exact check of the right lifting property against a sieve of posets.
//!
//! The question "every square has a filler" is a two-level search: for all
//! tops and bottoms there exists a lift. Elements of the codomain poset are
//! visited in a fixed order; after each element only the values on the
//! frontier (visited elements still below an unvisited one) can influence
//! what follows. The search state is the frontier part of the square together
//! with the set of frontier parts of partial lifts, and results are memoized
//! on that state.

use std::collections::HashMap;
use std::sync::Arc;

use super::lifting::{enumerate_squares, find_lift, LiftingSquare};
use crate::error::{Error, Result};
use crate::fincat::{is_acyclic, is_sieve, FinCat, FinFunctor, Mor, Obj, SieveMode};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Rec {
    obj: u32,
    mors: Vec<u32>,
}

struct Shape {
    n: usize,
    /// Preimage in `A` of each element of `B`.
    in_a: Vec<bool>,
    order: Vec<usize>,
    /// Strictly smaller elements, latest visited first.
    lowers: Vec<Vec<usize>>,
    /// `lower_pos[b * n + p]`: index of `p` in `lowers[b]`.
    lower_pos: Vec<usize>,
    /// `det[b][k]`: indices `k2 < k` with `lowers[b][k] < lowers[b][k2]`.
    det: Vec<Vec<Vec<usize>>>,
    /// `frontier[j]` before visiting `order[j]`, ascending.
    frontier: Vec<Vec<usize>>,
    in_frontier: Vec<Vec<bool>>,
}

impl Shape {
    /// `None` when `B` is not a poset or `i` is not a sieve.
    fn new(i: &FinFunctor) -> Result<Option<Shape>> {
        let b = i.target();
        let n = b.num_objects();
        let thin = b.objects().all(|x| b.objects().all(|y| b.hom(x, y).len() <= 1));
        if !thin || !is_acyclic(b) || !is_sieve(i, SieveMode::Sieve)? {
            return Ok(None);
        }
        let mut in_a = vec![false; n];
        for x in i.source().objects() {
            in_a[i.obj(x).0] = true;
        }
        let below = |p: usize, q: usize| p != q && !b.hom(Obj(p), Obj(q)).is_empty();
        let all_lowers: Vec<Vec<usize>> = (0..n).map(|q| (0..n).filter(|&p| below(p, q)).collect()).collect();
        // Sweep: finish the down-set of one maximal element at a time,
        // preferring the one with the fewest unvisited elements.
        let maximal: Vec<usize> = (0..n).filter(|&x| (0..n).all(|q| !below(x, q))).collect();
        let mut processed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let m = *maximal
                .iter()
                .filter(|&&m| !processed[m])
                .min_by_key(|&&m| {
                    let fresh = all_lowers[m].iter().filter(|&&p| !processed[p]).count();
                    let old = all_lowers[m].len() - fresh;
                    (fresh, std::cmp::Reverse(old), m)
                })
                .expect("unvisited maximal element");
            let mut batch: Vec<usize> = all_lowers[m].iter().copied().filter(|&p| !processed[p]).collect();
            batch.sort_by_key(|&p| (all_lowers[p].len(), p));
            batch.push(m);
            for x in batch {
                processed[x] = true;
                order.push(x);
            }
        }
        let mut pos = vec![0; n];
        for (k, &x) in order.iter().enumerate() {
            pos[x] = k;
        }
        let lowers: Vec<Vec<usize>> = all_lowers
            .iter()
            .map(|ls| {
                let mut ls = ls.clone();
                ls.sort_by_key(|&p| std::cmp::Reverse(pos[p]));
                ls
            })
            .collect();
        let mut lower_pos = vec![usize::MAX; n * n];
        for (q, ls) in lowers.iter().enumerate() {
            for (k, &p) in ls.iter().enumerate() {
                lower_pos[q * n + p] = k;
            }
        }
        let det = lowers
            .iter()
            .map(|ls| (0..ls.len()).map(|k| (0..k).filter(|&k2| below(ls[k], ls[k2])).collect()).collect())
            .collect();
        let mut frontier = Vec::with_capacity(n + 1);
        let mut in_frontier = Vec::with_capacity(n + 1);
        let mut open: Vec<usize> = (0..n).map(|p| (0..n).filter(|&q| below(p, q)).count()).collect();
        let mut cur = vec![false; n];
        for j in 0..=n {
            in_frontier.push(cur.clone());
            frontier.push((0..n).filter(|&x| cur[x]).collect());
            if j == n {
                break;
            }
            let x = order[j];
            for &p in &all_lowers[x] {
                open[p] -= 1;
                if open[p] == 0 {
                    cur[p] = false;
                }
            }
            cur[x] = open[x] > 0;
        }
        Ok(Some(Shape {
            n,
            in_a,
            order,
            lowers,
            lower_pos,
            det,
            frontier,
            in_frontier,
        }))
    }

    fn lpos(&self, q: usize, p: usize) -> usize {
        self.lower_pos[q * self.n + p]
    }

    /// Frontier encoding after step `j` of the records selected by `keep`.
    fn project(&self, j: usize, w: &[Rec], keep: impl Fn(usize) -> bool) -> Vec<u32> {
        let mut out = Vec::new();
        let inf = &self.in_frontier[j];
        for &e in self.frontier[j].iter().filter(|&&e| keep(e)) {
            out.push(w[e].obj);
            for (k, &p) in self.lowers[e].iter().enumerate() {
                if inf[p] {
                    out.push(w[e].mors[k]);
                }
            }
        }
        out
    }

    fn unpack(&self, j: usize, state: &[u32], w: &mut [Rec], keep: impl Fn(usize) -> bool) {
        let inf = &self.in_frontier[j];
        let mut it = state.iter().copied();
        for &e in self.frontier[j].iter().filter(|&&e| keep(e)) {
            w[e].obj = it.next().expect("state layout");
            w[e].mors.resize(self.lowers[e].len(), u32::MAX);
            for (k, &p) in self.lowers[e].iter().enumerate() {
                if inf[p] {
                    w[e].mors[k] = it.next().expect("state layout");
                }
            }
        }
    }
}

/// Functors out of the poset element `b` given images of everything below it.
struct Choices<'a> {
    shape: &'a Shape,
    b: usize,
    tgt: &'a FinCat,
    obj_of: &'a dyn Fn(usize) -> Obj,
    /// Image of `p -> q` for `p < q < b`.
    mor_of: &'a dyn Fn(usize, usize) -> Mor,
    obj_ok: &'a dyn Fn(Obj) -> bool,
    mor_ok: &'a dyn Fn(usize, Mor) -> bool,
}

impl Choices<'_> {
    fn collect(&self) -> Vec<Rec> {
        let mut out = Vec::new();
        let mut cur = vec![Mor(0); self.shape.lowers[self.b].len()];
        for y in self.tgt.objects().filter(|&y| (self.obj_ok)(y)) {
            self.go(0, y, &mut cur, &mut out);
        }
        out
    }

    fn go(&self, k: usize, y: Obj, cur: &mut Vec<Mor>, out: &mut Vec<Rec>) {
        let lowers = &self.shape.lowers[self.b];
        if k == lowers.len() {
            out.push(Rec {
                obj: y.0 as u32,
                mors: cur.iter().map(|m| m.0 as u32).collect(),
            });
            return;
        }
        let p = lowers[k];
        let det = &self.shape.det[self.b][k];
        if let Some(&k2) = det.first() {
            let m = self.tgt.compose((self.mor_of)(p, lowers[k2]), cur[k2]);
            let agrees = det[1..]
                .iter()
                .all(|&k3| self.tgt.compose((self.mor_of)(p, lowers[k3]), cur[k3]) == m);
            if agrees && (self.mor_ok)(k, m) {
                cur[k] = m;
                self.go(k + 1, y, cur, out);
            }
        } else {
            for &m in self.tgt.hom((self.obj_of)(p), y) {
                if (self.mor_ok)(k, m) {
                    cur[k] = m;
                    self.go(k + 1, y, cur, out);
                }
            }
        }
    }
}

type Key = (usize, Vec<u32>, Vec<Vec<u32>>);

struct Game<'a> {
    shape: &'a Shape,
    g: &'a FinFunctor,
    budget: u64,
    nodes: u64,
    memo: HashMap<Key, bool>,
    complete: HashMap<(usize, Vec<u32>), bool>,
    /// Square side: tops (in `u`) on `A`, bottoms (in `v`) elsewhere.
    wb: Vec<Rec>,
    /// Lift side, outside `A`.
    wh: Vec<Rec>,
}

impl Game<'_> {
    fn tick(&mut self, n: usize) -> Result<()> {
        self.nodes += n as u64 + 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    fn square_choices(&self, b: usize) -> Vec<Rec> {
        let (shape, g, wb) = (self.shape, self.g, &self.wb);
        let lifted = |p: usize| shape.in_a[p];
        if shape.in_a[b] {
            let obj_of = |p: usize| Obj(wb[p].obj as usize);
            let mor_of = |p: usize, q: usize| Mor(wb[q].mors[shape.lpos(q, p)] as usize);
            Choices {
                shape,
                b,
                tgt: g.source(),
                obj_of: &obj_of,
                mor_of: &mor_of,
                obj_ok: &|_| true,
                mor_ok: &|_, _| true,
            }
            .collect()
        } else {
            let obj_of = |p: usize| {
                let o = Obj(wb[p].obj as usize);
                if lifted(p) {
                    g.obj(o)
                } else {
                    o
                }
            };
            let mor_of = |p: usize, q: usize| {
                let m = Mor(wb[q].mors[shape.lpos(q, p)] as usize);
                if lifted(q) {
                    g.mor(m)
                } else {
                    m
                }
            };
            Choices {
                shape,
                b,
                tgt: g.target(),
                obj_of: &obj_of,
                mor_of: &mor_of,
                obj_ok: &|_| true,
                mor_ok: &|_, _| true,
            }
            .collect()
        }
    }

    fn lift_choices(&self, b: usize) -> Vec<Rec> {
        let (shape, g, wb, wh) = (self.shape, self.g, &self.wb, &self.wh);
        let side = |p: usize| if shape.in_a[p] { &wb[p] } else { &wh[p] };
        let obj_of = |p: usize| Obj(side(p).obj as usize);
        let mor_of = |p: usize, q: usize| Mor(side(q).mors[shape.lpos(q, p)] as usize);
        let want = &wb[b];
        let obj_ok = |y: Obj| g.obj(y).0 as u32 == want.obj;
        let mor_ok = |k: usize, m: Mor| g.mor(m).0 as u32 == want.mors[k];
        Choices {
            shape,
            b,
            tgt: g.source(),
            obj_of: &obj_of,
            mor_of: &mor_of,
            obj_ok: &obj_ok,
            mor_ok: &mor_ok,
        }
        .collect()
    }

    fn unpack_square(&mut self, j: usize, state: &[u32]) {
        let mut wb = std::mem::take(&mut self.wb);
        self.shape.unpack(j, state, &mut wb, |_| true);
        self.wb = wb;
    }

    fn unpack_lift(&mut self, j: usize, state: &[u32]) {
        let shape = self.shape;
        let mut wh = std::mem::take(&mut self.wh);
        shape.unpack(j, state, &mut wh, |e| !shape.in_a[e]);
        self.wh = wh;
    }

    /// Children of a state after choosing `c` at step `j`.
    fn step(&mut self, j: usize, bstate: &[u32], hset: &[Vec<u32>], c: &Rec) -> Result<(Vec<u32>, Vec<Vec<u32>>)> {
        let shape = self.shape;
        let b = shape.order[j];
        self.unpack_square(j, bstate);
        self.wb[b] = c.clone();
        let next_b = shape.project(j + 1, &self.wb, |_| true);
        let mut next_h = Vec::new();
        for s in hset {
            self.unpack_lift(j, s);
            if shape.in_a[b] {
                next_h.push(shape.project(j + 1, &self.wh, |e| !shape.in_a[e]));
                continue;
            }
            let lifts = self.lift_choices(b);
            self.tick(lifts.len())?;
            for x in lifts {
                self.wh[b] = x;
                next_h.push(shape.project(j + 1, &self.wh, |e| !shape.in_a[e]));
            }
        }
        next_h.sort_unstable();
        next_h.dedup();
        Ok((next_b, next_h))
    }

    fn choices_at(&mut self, j: usize, bstate: &[u32]) -> Result<Vec<Rec>> {
        self.unpack_square(j, bstate);
        let cs = self.square_choices(self.shape.order[j]);
        self.tick(cs.len())?;
        Ok(cs)
    }

    fn can_complete(&mut self, j: usize, bstate: Vec<u32>) -> Result<bool> {
        if j == self.shape.n {
            return Ok(true);
        }
        if let Some(&v) = self.complete.get(&(j, bstate.clone())) {
            return Ok(v);
        }
        let mut ok = false;
        for c in self.choices_at(j, &bstate)? {
            let (nb, _) = self.step(j, &bstate, &[], &c)?;
            if self.can_complete(j + 1, nb)? {
                ok = true;
                break;
            }
        }
        self.complete.insert((j, bstate), ok);
        Ok(ok)
    }

    /// Whether every completion of the partial square has a lift.
    fn solve(&mut self, j: usize, bstate: Vec<u32>, hset: Vec<Vec<u32>>) -> Result<bool> {
        if hset.is_empty() {
            return Ok(!self.can_complete(j, bstate)?);
        }
        if j == self.shape.n {
            return Ok(true);
        }
        let key = (j, bstate, hset);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let (j, bstate, hset) = key;
        let mut ok = true;
        for c in self.choices_at(j, &bstate)? {
            let (nb, nh) = self.step(j, &bstate, &hset, &c)?;
            if !self.solve(j + 1, nb, nh)? {
                ok = false;
                break;
            }
        }
        self.memo.insert((j, bstate, hset), ok);
        Ok(ok)
    }

    /// Walks a failing branch down to a full square without a lift.
    fn counterexample(&mut self) -> Result<Vec<Rec>> {
        let n = self.shape.n;
        let mut full = vec![Rec::default(); n];
        let (mut bstate, mut hset) = (Vec::new(), vec![Vec::new()]);
        for j in 0..n {
            let b = self.shape.order[j];
            let mut chosen = None;
            for c in self.choices_at(j, &bstate)? {
                let (nb, nh) = self.step(j, &bstate, &hset, &c)?;
                let fails = if hset.is_empty() {
                    self.can_complete(j + 1, nb.clone())?
                } else {
                    !self.solve(j + 1, nb.clone(), nh.clone())?
                };
                if fails {
                    chosen = Some((c, nb, nh));
                    break;
                }
            }
            let (c, nb, nh) = chosen.expect("failing branch continues");
            full[b] = c;
            bstate = nb;
            hset = nh;
        }
        Ok(full)
    }
}

/// A commuting square from `i` to `g` without a lift, if one exists.
pub fn lifting_counterexample(i: &FinFunctor, g: &FinFunctor, budget: u64) -> Result<Option<LiftingSquare>> {
    let Some(shape) = Shape::new(i)? else {
        return naive_counterexample(i, g, budget);
    };
    let mut game = Game {
        shape: &shape,
        g,
        budget,
        nodes: 0,
        memo: HashMap::new(),
        complete: HashMap::new(),
        wb: vec![Rec::default(); shape.n],
        wh: vec![Rec::default(); shape.n],
    };
    if game.solve(0, Vec::new(), vec![Vec::new()])? {
        return Ok(None);
    }
    let full = game.counterexample()?;
    let sq = square_from(i, g, &shape, &full)?;
    Ok(Some(sq))
}

fn square_from(i: &FinFunctor, g: &FinFunctor, shape: &Shape, full: &[Rec]) -> Result<LiftingSquare> {
    let (a, b) = (i.source(), i.target());
    let (u, v) = (g.source(), g.target());
    let mor_in = |m: Mor, cat: &Arc<FinCat>| -> Mor {
        let (p, q) = (b.src(m).0, b.tgt(m).0);
        if p == q {
            cat.id(Obj(full[q].obj as usize))
        } else {
            Mor(full[q].mors[shape.lpos(q, p)] as usize)
        }
    };
    let top = FinFunctor::new(
        a.clone(),
        u.clone(),
        a.objects().map(|x| Obj(full[i.obj(x).0].obj as usize)).collect(),
        a.morphisms().map(|m| mor_in(i.mor(m), u)).collect(),
    )?;
    let bottom = FinFunctor::new(
        b.clone(),
        v.clone(),
        b.objects()
            .map(|x| {
                let o = Obj(full[x.0].obj as usize);
                if shape.in_a[x.0] {
                    g.obj(o)
                } else {
                    o
                }
            })
            .collect(),
        b.morphisms()
            .map(|m| {
                let q = b.tgt(m).0;
                if shape.in_a[q] {
                    g.mor(mor_in(m, u))
                } else {
                    mor_in(m, v)
                }
            })
            .collect(),
    )?;
    LiftingSquare::new(i.clone(), g.clone(), top, bottom)
}

/// Enumerates every square and searches a lift for each.
pub fn naive_counterexample(i: &FinFunctor, g: &FinFunctor, budget: u64) -> Result<Option<LiftingSquare>> {
    for sq in enumerate_squares(i, g, budget)? {
        if find_lift(&sq, budget)?.is_none() {
            return Ok(Some(sq));
        }
    }
    Ok(None)
}

