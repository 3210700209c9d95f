use std::sync::Arc;

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Mor, Obj};

/// A finite partially ordered set with an explicit order matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    leq: Vec<bool>,
}

impl Poset {
    /// Checks reflexivity, antisymmetry and transitivity of `leq(a, b)`.
    pub fn new(elements: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let n = elements.len();
        let mut m = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                m[a * n + b] = leq(a, b);
            }
        }
        let p = Poset { elements, leq: m };
        p.check()?;
        Ok(p)
    }

    /// Reflexive-transitive closure of the given relations.
    pub fn from_relations(elements: Vec<String>, relations: &[(usize, usize)]) -> Result<Poset> {
        let n = elements.len();
        let mut m = vec![false; n * n];
        for a in 0..n {
            m[a * n + a] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("relation ({a}, {b}) out of range")));
            }
            m[a * n + b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if m[a * n + k] {
                    for b in 0..n {
                        if m[k * n + b] {
                            m[a * n + b] = true;
                        }
                    }
                }
            }
        }
        let p = Poset { elements, leq: m };
        p.check()?;
        Ok(p)
    }

    /// The poset underlying a thin acyclic category.
    pub fn from_category(c: &FinCat) -> Result<Poset> {
        for x in c.objects() {
            for y in c.objects() {
                if c.hom(x, y).len() > 1 {
                    return Err(Error::InvalidPoset(format!(
                        "{} parallel morphisms {} -> {}",
                        c.hom(x, y).len(),
                        c.obj_name(x),
                        c.obj_name(y)
                    )));
                }
            }
        }
        Poset::new(c.object_names().to_vec(), |a, b| !c.hom(Obj(a), Obj(b)).is_empty())
    }

    fn check(&self) -> Result<()> {
        let n = self.len();
        let mut seen = std::collections::HashSet::new();
        for e in &self.elements {
            if !seen.insert(e.as_str()) {
                return Err(Error::DuplicateName(e.clone()));
            }
        }
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(Error::InvalidPoset(format!("{} is not below itself", self.elements[a])));
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(Error::InvalidPoset(format!(
                        "{} and {} violate antisymmetry",
                        self.elements[a], self.elements[b]
                    )));
                }
                for c in 0..n {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return Err(Error::InvalidPoset(format!(
                            "transitivity fails on {}, {}, {}",
                            self.elements[a], self.elements[b], self.elements[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// The category with one morphism `a<=b` for each strict relation.
    pub fn to_category(&self) -> FinCat {
        let n = self.len();
        let mut arrows = Vec::new();
        let mut index = vec![usize::MAX; n * n];
        for a in 0..n {
            index[a * n + a] = a;
            for b in 0..n {
                if self.lt(a, b) {
                    index[a * n + b] = n + arrows.len();
                    arrows.push((format!("{}<={}", self.elements[a], self.elements[b]), Obj(a), Obj(b)));
                }
            }
        }
        let ends: Vec<(usize, usize)> = arrows.iter().map(|(_, s, t)| (s.0, t.0)).collect();
        FinCat::build(self.elements.clone(), arrows, |f, g| {
            let (s, _) = ends[f.0 - n];
            let (_, t) = ends[g.0 - n];
            Some(Mor(index[s * n + t]))
        })
        .expect("poset category")
    }

    pub fn is_monotone(&self, map: &[usize], target: &Poset) -> bool {
        map.len() == self.len()
            && (0..self.len()).all(|a| (0..self.len()).all(|b| !self.leq(a, b) || target.leq(map[a], map[b])))
    }

    /// Functor between the poset categories induced by a monotone map.
    pub fn functor(&self, map: &[usize], target: &Poset) -> Result<FinFunctor> {
        if !self.is_monotone(map, target) {
            return Err(Error::NotAFunctor("map is not monotone".into()));
        }
        let (c, d) = (Arc::new(self.to_category()), Arc::new(target.to_category()));
        poset_functor(&c, &d, map)
    }

    /// Longest strict chain, counted in elements.
    pub fn height(&self) -> usize {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (0..n).filter(|&b| self.lt(b, a)).count());
        let mut best = vec![1; n];
        for (i, &a) in order.iter().enumerate() {
            for &b in &order[..i] {
                if self.lt(b, a) {
                    best[a] = best[a].max(best[b] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }
}

/// Functor between thin categories determined by its object map.
pub fn poset_functor(c: &Arc<FinCat>, d: &Arc<FinCat>, map: &[usize]) -> Result<FinFunctor> {
    let obj_map: Vec<Obj> = map.iter().map(|&x| Obj(x)).collect();
    let mut mor_map = Vec::with_capacity(c.num_morphisms());
    for f in c.morphisms() {
        let hom = d.hom(obj_map[c.src(f).0], obj_map[c.tgt(f).0]);
        match hom {
            [g] => mor_map.push(*g),
            _ => return Err(Error::NotAFunctor("object map does not extend to morphisms".into())),
        }
    }
    FinFunctor::new(c.clone(), d.clone(), obj_map, mor_map)
}

/// Simplices of `K` ordered by inclusion, named `"{a,b}"`.
pub fn face_poset(k: &SimplicialComplex) -> Poset {
    let simplices = k.simplices();
    let names = simplices.iter().map(|s| k.simplex_name(s)).collect();
    Poset::new(names, |a, b| {
        let (s, t) = (&simplices[a], &simplices[b]);
        s.len() <= t.len() && s.iter().all(|v| t.binary_search(v).is_ok())
    })
    .expect("inclusion is a partial order")
}

/// Complex of chains of `p`; vertices are the elements in their given order.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    let n = p.len();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    // Maximal chains suffice; extend every chain by larger-index comparable elements.
    fn extend(p: &Poset, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mut grown = false;
        for b in 0..p.len() {
            if !chain.contains(&b) && chain.iter().all(|&a| p.lt(a, b) || p.lt(b, a)) && b > *chain.last().unwrap() {
                grown = true;
                chain.push(b);
                extend(p, chain, out);
                chain.pop();
            }
        }
        if !grown {
            out.push(chain.clone());
        }
    }
    for a in 0..n {
        extend(p, &mut vec![a], &mut chains);
    }
    SimplicialComplex::new(p.elements().to_vec(), chains).expect("chains form a complex")
}

/// Barycentric subdivision: the order complex of the face poset.
pub fn sd(k: &SimplicialComplex) -> SimplicialComplex {
    order_complex(&face_poset(k))
}

/// `cSd^2 K`, the face poset of the subdivision.
pub fn c_sd2(k: &SimplicialComplex) -> Poset {
    face_poset(&sd(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_poset_examples() {
        assert_eq!(face_poset(&SimplicialComplex::standard(0)).len(), 1);
        let p = face_poset(&SimplicialComplex::standard(1));
        assert_eq!(p.len(), 3);
        assert_eq!(p.elements()[2], "{0,1}");
        assert!(p.lt(0, 2) && p.lt(1, 2) && !p.leq(0, 1));
        assert_eq!(face_poset(&SimplicialComplex::boundary(2)).len(), 6);
    }

    #[test]
    fn sd_examples() {
        assert_eq!(sd(&SimplicialComplex::standard(0)).f_vector(), vec![1]);
        assert_eq!(sd(&SimplicialComplex::standard(1)).f_vector(), vec![3, 2]);
        assert_eq!(sd(&SimplicialComplex::standard(2)).f_vector(), vec![7, 12, 6]);
    }

    #[test]
    fn c_sd2_sizes() {
        assert_eq!(c_sd2(&SimplicialComplex::standard(1)).len(), 5);
        assert_eq!(c_sd2(&SimplicialComplex::standard(2)).len(), 25);
        assert_eq!(c_sd2(&SimplicialComplex::boundary(1)).len(), 2);
    }

    #[test]
    fn poset_validation() {
        assert!(Poset::from_relations(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]).is_err());
        let p = Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.height(), 3);
        let c = p.to_category();
        assert_eq!(c.num_non_identity(), 3);
        assert_eq!(Poset::from_category(&c).unwrap(), p);
    }
}
