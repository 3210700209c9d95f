use std::collections::HashMap;
use std::sync::Arc;

use super::complex::SimplicialComplex;
use crate::congruence::{saturate, RelationPair};
use crate::error::{Error, Result};
use crate::fincat::{is_acyclic, FinCat, Mor, Obj};

/// A possibly degenerate simplex `x . s`: a nondegenerate simplex `x` of
/// dimension `dim` pulled back along the monotone surjection `s: [m] -> [dim]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSimplex {
    pub dim: usize,
    pub index: usize,
    pub surjection: Vec<usize>,
}

impl FormalSimplex {
    pub fn nondegenerate(dim: usize, index: usize) -> FormalSimplex {
        FormalSimplex {
            dim,
            index,
            surjection: (0..=dim).collect(),
        }
    }

    /// Formal dimension `m`.
    pub fn formal_dim(&self) -> usize {
        self.surjection.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.formal_dim() > self.dim
    }
}

/// A simplicial set known up to dimension `max_dim`, stored by its
/// nondegenerate simplices and their faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedSSet {
    pub max_dim: usize,
    /// `labels[n][s]` names the nondegenerate `n`-simplex `s`.
    pub labels: Vec<Vec<String>>,
    /// `faces[n][s][i] = d_i` for `n >= 1`; empty for vertices.
    pub faces: Vec<Vec<Vec<FormalSimplex>>>,
    /// Set when nondegenerate simplices exist above `max_dim`.
    pub truncated: bool,
}

impl BoundedSSet {
    pub fn count(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, Vec::len)
    }

    /// `d_i` of a formal simplex.
    pub fn face(&self, x: &FormalSimplex, i: usize) -> FormalSimplex {
        let m = x.formal_dim();
        assert!(m >= 1 && i <= m, "face d_{i} of a {m}-simplex");
        let t: Vec<usize> = (0..m).map(|j| x.surjection[if j < i { j } else { j + 1 }]).collect();
        let k = x.dim;
        let missing = (0..=k).find(|v| t.binary_search(v).is_err());
        match missing {
            None => FormalSimplex {
                dim: k,
                index: x.index,
                surjection: t,
            },
            Some(j) => {
                let reduced: Vec<usize> = t.iter().map(|&v| if v < j { v } else { v - 1 }).collect();
                let y = &self.faces[k][x.index][j];
                FormalSimplex {
                    dim: y.dim,
                    index: y.index,
                    surjection: reduced.iter().map(|&v| y.surjection[v]).collect(),
                }
            }
        }
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every nondegenerate simplex.
    pub fn check_simplicial_identities(&self) -> Result<()> {
        for n in 2..self.labels.len() {
            for s in 0..self.count(n) {
                let x = FormalSimplex::nondegenerate(n, s);
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&x, j), i);
                        let rhs = self.face(&self.face(&x, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::InvalidComplex(format!(
                                "d_{i} d_{j} differs from d_{} d_{i} on {}",
                                j - 1,
                                self.labels[n][s]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// An ordered complex viewed as a simplicial set.
    pub fn from_complex(k: &SimplicialComplex) -> BoundedSSet {
        let top = k.dim().unwrap_or(0);
        let mut labels = vec![Vec::new(); top + 1];
        let mut local = vec![0; k.num_simplices()];
        for (i, s) in k.simplices().iter().enumerate() {
            let d = s.len() - 1;
            local[i] = labels[d].len();
            labels[d].push(k.simplex_name(s));
        }
        let mut faces = vec![Vec::new(); top + 1];
        for s in k.simplices() {
            let d = s.len() - 1;
            let fs = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        FormalSimplex::nondegenerate(d - 1, local[k.index_of(&f).expect("closed")])
                    })
                    .collect()
            };
            faces[d].push(fs);
        }
        BoundedSSet {
            max_dim: top,
            labels,
            faces,
            truncated: false,
        }
    }
}

/// Longest chain of composable non-identity morphisms in an acyclic category.
pub fn longest_chain(c: &FinCat) -> usize {
    let n = c.num_objects();
    let mut memo = vec![None; n];
    fn go(c: &FinCat, x: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(v) = memo[x] {
            return v;
        }
        let v = c
            .out_of(Obj(x))
            .iter()
            .filter(|&&f| !c.is_identity(f))
            .map(|&f| 1 + go(c, c.tgt(f).0, memo))
            .max()
            .unwrap_or(0);
        memo[x] = Some(v);
        v
    }
    (0..n).map(|x| go(c, x, &mut memo)).max().unwrap_or(0)
}

/// The nerve of `c` up to dimension `max_dim`. For acyclic categories the
/// cap may be omitted and the nerve is complete.
pub fn nerve(c: &FinCat, max_dim: Option<usize>) -> Result<BoundedSSet> {
    let top = match max_dim {
        Some(d) => d,
        None if is_acyclic(c) => longest_chain(c),
        None => {
            return Err(Error::PreconditionViolated(
                "the nerve of a category with loops needs a dimension cap".into(),
            ))
        }
    };
    let mut chains: Vec<Vec<Vec<Mor>>> = vec![c.objects().map(|x| vec![c.id(x)]).collect()];
    let mut index: Vec<HashMap<Vec<Mor>, usize>> = vec![HashMap::new()];
    let extends = |chain: &Vec<Mor>| {
        let end = c.tgt(*chain.last().unwrap());
        c.out_of(end).iter().copied().filter(move |&g| !c.is_identity(g))
    };
    for n in 1..=top {
        let mut next = Vec::new();
        for chain in &chains[n - 1] {
            for g in extends(chain) {
                let mut ch = if n == 1 { Vec::new() } else { chain.clone() };
                ch.push(g);
                next.push(ch);
            }
        }
        index.push(next.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect());
        chains.push(next);
    }
    let truncated = chains[top].iter().any(|ch| extends(ch).next().is_some());
    let formal = |seq: &[Mor], start: Obj| -> FormalSimplex {
        let core: Vec<Mor> = seq.iter().copied().filter(|&f| !c.is_identity(f)).collect();
        let mut surjection = vec![0];
        let mut count = 0;
        for &f in seq {
            if !c.is_identity(f) {
                count += 1;
            }
            surjection.push(count);
        }
        let (dim, idx) = if core.is_empty() {
            let x = seq.last().map_or(start, |&f| c.tgt(f));
            (0, x.0)
        } else {
            (core.len(), index[core.len()][&core])
        };
        FormalSimplex {
            dim,
            index: idx,
            surjection,
        }
    };
    let mut labels = Vec::with_capacity(chains.len());
    let mut faces = Vec::with_capacity(chains.len());
    labels.push(c.object_names().to_vec());
    faces.push(vec![Vec::new(); c.num_objects()]);
    for (n, level) in chains.iter().enumerate().skip(1) {
        labels.push(
            level
                .iter()
                .map(|ch| ch.iter().map(|&f| c.mor_name(f)).collect::<Vec<_>>().join(";"))
                .collect(),
        );
        faces.push(
            level
                .iter()
                .map(|ch| {
                    (0..=n)
                        .map(|i| {
                            if i == 0 {
                                formal(&ch[1..], c.tgt(ch[0]))
                            } else if i == n {
                                formal(&ch[..n - 1], c.src(ch[0]))
                            } else {
                                let mut seq = ch[..i - 1].to_vec();
                                seq.push(c.compose(ch[i - 1], ch[i]));
                                seq.extend_from_slice(&ch[i + 1..]);
                                formal(&seq, c.src(ch[0]))
                            }
                        })
                        .collect()
                })
                .collect(),
        );
    }
    Ok(BoundedSSet {
        max_dim: top,
        labels,
        faces,
        truncated,
    })
}

/// The fundamental category: vertices, one generator per nondegenerate
/// edge, degenerate edges as identities, and `d2 ; d0 = d1` for every
/// 2-simplex.
pub fn tau1(x: &BoundedSSet, cap: usize) -> Result<Arc<FinCat>> {
    if x.max_dim < 2 && x.truncated {
        return Err(Error::PreconditionViolated("fundamental category needs the 2-skeleton".into()));
    }
    let nv = x.count(0);
    let ne = x.count(1);
    // Each edge is a separate arrow between fresh endpoints glued onto vertices.
    let mut objects: Vec<String> = (0..nv).map(|v| format!("v{v}")).collect();
    let mut arrows = Vec::with_capacity(ne);
    for e in 0..ne {
        objects.push(format!("s{e}"));
        objects.push(format!("t{e}"));
        arrows.push((x.labels[1][e].clone(), Obj(nv + 2 * e), Obj(nv + 2 * e + 1)));
    }
    let total = objects.len();
    let carrier = Arc::new(FinCat::build(objects, arrows, |_, _| None)?);
    let mut r = RelationPair::new();
    for e in 0..ne {
        let d0 = &x.faces[1][e][0];
        let d1 = &x.faces[1][e][1];
        r.object_pairs.push((Obj(nv + 2 * e), Obj(d1.index)));
        r.object_pairs.push((Obj(nv + 2 * e + 1), Obj(d0.index)));
    }
    let edge = |f: &FormalSimplex| -> Mor {
        if f.dim == 1 {
            Mor(total + f.index)
        } else {
            Mor(f.index)
        }
    };
    for s in 0..x.count(2) {
        let fs = &x.faces[2][s];
        let (d0, d1, d2) = (edge(&fs[0]), edge(&fs[1]), edge(&fs[2]));
        if [d0, d1, d2].iter().all(|&m| carrier.is_identity(m)) {
            continue;
        }
        r.sequence_pairs.push((vec![d2, d0], vec![d1]));
    }
    let p = saturate(&carrier, &r, cap)?;
    let names = p
        .class_members
        .iter()
        .map(|m| {
            let v = m.iter().find(|o| o.0 < nv).expect("every class holds a vertex");
            x.labels[0][v.0].clone()
        })
        .collect();
    Ok(Arc::new(p.quotient.with_object_names(names)?))
}

/// Number of simplicial maps `X -> N(C)`; the nerve is 2-coskeletal, so
/// these are vertex and edge assignments respecting every 2-simplex.
pub fn count_maps_into_nerve(x: &BoundedSSet, c: &FinCat) -> u64 {
    let nv = x.count(0);
    let ne = x.count(1);
    let mut vertex = vec![Obj(0); nv];
    let mut edge = vec![Mor(0); ne];
    // Triangles checked once all their edges are assigned.
    let mut tri_at = vec![Vec::new(); ne];
    for s in 0..x.count(2) {
        let last = x.faces[2][s].iter().filter(|f| f.dim == 1).map(|f| f.index).max();
        if let Some(e) = last {
            tri_at[e].push(s);
        }
    }
    fn image(f: &FormalSimplex, vertex: &[Obj], edge: &[Mor], c: &FinCat) -> Mor {
        if f.dim == 1 {
            edge[f.index]
        } else {
            c.id(vertex[f.index])
        }
    }
    fn edges(x: &BoundedSSet, c: &FinCat, e: usize, vertex: &[Obj], edge: &mut Vec<Mor>, tri_at: &[Vec<usize>]) -> u64 {
        if e == edge.len() {
            return 1;
        }
        let (s, t) = (vertex[x.faces[1][e][1].index], vertex[x.faces[1][e][0].index]);
        let mut total = 0;
        for &m in c.hom(s, t) {
            edge[e] = m;
            let ok = tri_at[e].iter().all(|&sx| {
                let fs = &x.faces[2][sx];
                let (d0, d1, d2) = (image(&fs[0], vertex, edge, c), image(&fs[1], vertex, edge, c), image(&fs[2], vertex, edge, c));
                c.try_compose(d2, d0) == Some(d1)
            });
            if ok {
                total += edges(x, c, e + 1, vertex, edge, tri_at);
            }
        }
        total
    }
    fn vertices(x: &BoundedSSet, c: &FinCat, v: usize, vertex: &mut Vec<Obj>, edge: &mut Vec<Mor>, tri_at: &[Vec<usize>]) -> u64 {
        if v == vertex.len() {
            return edges(x, c, 0, vertex, edge, tri_at);
        }
        c.objects()
            .map(|o| {
                vertex[v] = o;
                vertices(x, c, v + 1, vertex, edge, tri_at)
            })
            .sum()
    }
    vertices(x, c, 0, &mut vertex, &mut edge, &tri_at)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{are_isomorphic, count_functors};
    use crate::simplicial::poset::face_poset;

    #[test]
    fn nerve_examples() {
        let t = nerve(&FinCat::terminal(), None).unwrap();
        assert_eq!((t.count(0), t.count(1)), (1, 0));
        let a = nerve(&FinCat::arrow(), None).unwrap();
        assert_eq!((a.count(0), a.count(1), a.count(2)), (2, 1, 0));
        let pp = FinCat::build(
            vec!["a".into(), "b".into()],
            vec![("f".into(), Obj(0), Obj(1)), ("g".into(), Obj(0), Obj(1))],
            |_, _| None,
        )
        .unwrap();
        let n = nerve(&pp, None).unwrap();
        assert_eq!((n.count(0), n.count(1), n.max_dim), (2, 2, 1));
        let c3 = nerve(&FinCat::chain(3), None).unwrap();
        assert_eq!((c3.count(0), c3.count(1), c3.count(2)), (3, 3, 1));
        c3.check_simplicial_identities().unwrap();
    }

    #[test]
    fn nerve_of_idempotent_is_truncated_with_degenerate_faces() {
        let e = FinCat::build(vec!["x".into()], vec![("e".into(), Obj(0), Obj(0))], |_, _| Some(Mor(1))).unwrap();
        assert!(nerve(&e, None).is_err());
        let n = nerve(&e, Some(3)).unwrap();
        assert!(n.truncated);
        assert_eq!(n.count(3), 1);
        n.check_simplicial_identities().unwrap();
        // Group of order 2: s;s = id gives a degenerate inner face.
        let z2 = FinCat::build(vec!["x".into()], vec![("s".into(), Obj(0), Obj(0))], |_, _| Some(Mor(0))).unwrap();
        let n = nerve(&z2, Some(3)).unwrap();
        assert!(n.faces[2][0][1].is_degenerate());
        n.check_simplicial_identities().unwrap();
    }

    #[test]
    fn tau1_examples() {
        let d2 = BoundedSSet::from_complex(&SimplicialComplex::standard(2));
        let t = tau1(&d2, 1000).unwrap();
        assert!(are_isomorphic(&t, &Arc::new(FinCat::chain(3)), 1000).unwrap().is_some());

        let b2 = BoundedSSet::from_complex(&SimplicialComplex::boundary(2));
        let t = tau1(&b2, 1000).unwrap();
        let (x0, x2) = (t.object_by_name("{0}").unwrap(), t.object_by_name("{2}").unwrap());
        assert_eq!(t.hom(x0, x2).len(), 2);

        let p = face_poset(&SimplicialComplex::standard(2)).to_category();
        let t = tau1(&nerve(&p, None).unwrap(), 1000).unwrap();
        assert!(are_isomorphic(&t, &Arc::new(p), 100_000).unwrap().is_some());
    }

    #[test]
    fn tau1_of_nerve_of_group() {
        let z2 = Arc::new(FinCat::build(vec!["x".into()], vec![("s".into(), Obj(0), Obj(0))], |_, _| Some(Mor(0))).unwrap());
        let t = tau1(&nerve(&z2, Some(2)).unwrap(), 1000).unwrap();
        assert!(are_isomorphic(&t, &z2, 1000).unwrap().is_some());
    }

    #[test]
    fn adjunction_count_on_boundary() {
        let b2 = BoundedSSet::from_complex(&SimplicialComplex::boundary(2));
        let t = tau1(&b2, 1000).unwrap();
        for c in [FinCat::chain(3), FinCat::arrow(), FinCat::terminal()] {
            assert_eq!(count_functors(&t, &c, 1_000_000).unwrap(), count_maps_into_nerve(&b2, &c));
        }
    }
}
