//! Integral simplicial homology via Smith normal form.

mod chain;
mod snf;

pub use chain::{homology, truncated_homology, ChainComplexZ, ChainSource, HomologyGroup, HomologyProfile};
pub use snf::{smith_invariants, smith_normal_form, ElementaryOp, IntMatrix, SmithForm};

use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor};
use crate::simplicial::nerve;

/// Outcome of comparing nerve homology. Equal homology is necessary, not
/// sufficient, for a weak equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyVerdict {
    PossiblyEquivalent,
    NotEquivalent { dim: usize },
}

/// Homology of the nerve; categories whose nerve has nondegenerate simplices
/// above the object count are rejected as truncated.
pub fn nerve_homology(c: &FinCat) -> Result<HomologyProfile> {
    let cap = c.num_objects();
    let x = nerve(c, Some(cap))?;
    if x.truncated {
        return Err(Error::TruncatedInput { max_dim: cap });
    }
    homology(&x)
}

pub fn homology_equivalent(f: &FinFunctor) -> Result<HomologyVerdict> {
    let hs = nerve_homology(f.source())?;
    let ht = nerve_homology(f.target())?;
    Ok(match hs.first_difference(&ht) {
        None => HomologyVerdict::PossiblyEquivalent,
        Some(dim) => HomologyVerdict::NotEquivalent { dim },
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{Mor, Obj};
    use crate::simplicial::{c_sd2, sd, tau1, BoundedSSet, SimplicialComplex};

    /// Rank over the rationals by fraction-free elimination on `i128`.
    fn rational_rank(mut m: Vec<Vec<i128>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && m[r][c] != 0 {
                    let (a, b) = (m[rank][c], m[r][c]);
                    for k in 0..cols {
                        m[r][k] = m[r][k] * a - m[rank][k] * b;
                    }
                    let g = m[r].iter().fold(0i128, |g, &v| num_integer::gcd(g, v));
                    if g > 1 {
                        m[r].iter_mut().for_each(|v| *v /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Betti numbers from simplex counts and boundary ranks over the rationals.
    fn betti_oracle(k: &SimplicialComplex) -> Vec<usize> {
        let top = k.dim().map_or(0, |d| d + 1);
        let by_dim: Vec<Vec<&Vec<usize>>> = (0..=top).map(|n| k.simplices_of_dim(n).collect()).collect();
        let rank = |n: usize| -> usize {
            if n == 0 || n > top || by_dim[n].is_empty() {
                return 0;
            }
            let m: Vec<Vec<i128>> = by_dim[n - 1]
                .iter()
                .map(|f| {
                    by_dim[n]
                        .iter()
                        .map(|s| match (0..s.len()).find(|&i| {
                            let mut t = (*s).clone();
                            t.remove(i);
                            &t == *f
                        }) {
                            Some(i) if i % 2 == 0 => 1,
                            Some(_) => -1,
                            None => 0,
                        })
                        .collect()
                })
                .collect();
            rational_rank(m)
        };
        let mut b: Vec<usize> = (0..top).map(|n| by_dim[n].len() - rank(n) - rank(n + 1)).collect();
        while b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    #[test]
    fn spheres_and_simplices() {
        let h = homology(&SimplicialComplex::standard(0)).unwrap();
        assert_eq!(h, HomologyProfile::point());
        let b2 = SimplicialComplex::boundary(2);
        assert_eq!(homology(&b2).unwrap().betti_numbers(), betti_oracle(&b2));
        assert_eq!(homology(&b2).unwrap(), HomologyProfile::from_betti(&[1, 1]));
        let b3 = SimplicialComplex::boundary(3);
        assert_eq!(homology(&b3).unwrap().betti_numbers(), betti_oracle(&b3));
        assert_eq!(homology(&b3).unwrap(), HomologyProfile::from_betti(&[1, 0, 1]));
        assert_eq!(homology(&SimplicialComplex::boundary(1)).unwrap(), HomologyProfile::sphere(Some(0)));
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // Six-vertex triangulation of RP^2.
        let faces = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
        ];
        let k = SimplicialComplex::new((0..6).map(|i| i.to_string()).collect(), faces.iter().map(|f| f.to_vec()).collect()).unwrap();
        let h = homology(&k).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 0]);
        assert_eq!(h.group(1).torsion, vec![num_bigint::BigInt::from(2)]);
        assert_eq!(h.lines(), vec!["H_0 = Z", "H_1 = Z/2"]);
    }

    #[test]
    fn complex_and_sset_routes_agree() {
        for k in [SimplicialComplex::boundary(3), SimplicialComplex::horn(2, 1).unwrap(), sd(&SimplicialComplex::boundary(2))] {
            let via_sset = homology(&BoundedSSet::from_complex(&k)).unwrap();
            assert_eq!(via_sset, homology(&k).unwrap());
            ChainComplexZ::from_complex(&k).check_boundary_squared().unwrap();
        }
    }

    #[test]
    fn nerve_of_subdivided_boundary_is_a_circle() {
        let p = c_sd2(&SimplicialComplex::boundary(2));
        let h = nerve_homology(&p.to_category()).unwrap();
        assert_eq!(h, HomologyProfile::sphere(Some(1)));
    }

    #[test]
    fn equivalence_verdicts() {
        let arrow = Arc::new(FinCat::arrow());
        let pt = Arc::new(FinCat::terminal());
        assert_eq!(homology_equivalent(&FinFunctor::identity(arrow.clone())).unwrap(), HomologyVerdict::PossiblyEquivalent);
        for end in 0..2 {
            let f = FinFunctor::new(pt.clone(), arrow.clone(), vec![Obj(end)], vec![Mor(end)]).unwrap();
            assert_eq!(homology_equivalent(&f).unwrap(), HomologyVerdict::PossiblyEquivalent);
        }
        let circle = tau1(&BoundedSSet::from_complex(&SimplicialComplex::boundary(2)), 1000).unwrap();
        let f = FinFunctor::new(pt.clone(), circle, vec![Obj(0)], vec![Mor(0)]).unwrap();
        assert_eq!(homology_equivalent(&f).unwrap(), HomologyVerdict::NotEquivalent { dim: 1 });
    }

    #[test]
    fn cyclic_nerve_is_truncated() {
        let z2 = FinCat::build(vec!["*".into()], vec![("s".into(), Obj(0), Obj(0))], |_, _| Some(Mor(0))).unwrap();
        assert!(matches!(nerve_homology(&z2), Err(Error::TruncatedInput { .. })));
        let x = nerve(&z2, Some(3)).unwrap();
        assert!(matches!(homology(&x), Err(Error::TruncatedInput { max_dim: 3 })));
        assert_eq!(truncated_homology(&x).group(0).betti, 1);
    }
}
