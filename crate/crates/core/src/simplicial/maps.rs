use super::complex::SimplicialComplex;
use super::poset::sd;
use crate::error::{Error, Result};

/// All simplicial maps `K -> X` as vertex maps, in lexicographic order.
pub fn enumerate_simplicial_maps(k: &SimplicialComplex, x: &SimplicialComplex, budget: u64) -> Result<Vec<Vec<usize>>> {
    let n = k.num_vertices();
    // Maximal simplices checked at their last vertex.
    let mut check_at = vec![Vec::new(); n];
    for s in k.maximal_simplices() {
        if s.len() > 1 {
            check_at[*s.last().unwrap()].push(s);
        }
    }
    let mut out = Vec::new();
    let mut map = vec![0; n];
    let mut nodes = 0u64;
    fn go(
        v: usize,
        map: &mut Vec<usize>,
        x: &SimplicialComplex,
        check_at: &[Vec<Vec<usize>>],
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<()> {
        if v == map.len() {
            out.push(map.clone());
            return Ok(());
        }
        for y in 0..x.num_vertices() {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
            map[v] = y;
            let ok = check_at[v].iter().all(|s| {
                let mut img: Vec<usize> = s.iter().map(|&u| map[u]).collect();
                img.sort_unstable();
                img.dedup();
                x.contains(&img)
            });
            if ok {
                go(v + 1, map, x, check_at, out, nodes, budget)?;
            }
        }
        Ok(())
    }
    go(0, &mut map, x, &check_at, &mut out, &mut nodes, budget)?;
    Ok(out)
}

/// `Ex(X)_n`, the simplicial maps `sd(Delta^n) -> X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExSimplices {
    pub n: usize,
    pub count: usize,
    /// Vertex maps indexed by the faces of `Delta^n` in simplex order.
    pub representatives: Vec<Vec<usize>>,
}

pub fn ex_bounded(x: &SimplicialComplex, n: usize, budget: u64) -> Result<ExSimplices> {
    if n > 3 {
        return Err(Error::PreconditionViolated(format!("Ex is only evaluated up to dimension 3, got {n}")));
    }
    let maps = enumerate_simplicial_maps(&sd(&SimplicialComplex::standard(n)), x, budget)?;
    Ok(ExSimplices {
        n,
        count: maps.len(),
        representatives: maps,
    })
}

/// Number of simplicial maps `K -> Ex(X)` for an ordered complex `K`,
/// counted as families of `Ex(X)` simplices compatible with all faces.
pub fn ex_compatible_families(k: &SimplicialComplex, x: &SimplicialComplex, budget: u64) -> Result<u64> {
    let top = match k.dim() {
        None => return Ok(1),
        Some(d) => d,
    };
    let ex: Vec<ExSimplices> = (0..=top).map(|m| ex_bounded(x, m, budget)).collect::<Result<_>>()?;
    // face_index[m][i][s]: position in Delta^m of the image of face s of Delta^(m-1) under the i-th coface.
    let std: Vec<SimplicialComplex> = (0..=top).map(SimplicialComplex::standard).collect();
    let mut face_index = vec![Vec::new(); top + 1];
    for m in 1..=top {
        for i in 0..=m {
            let cof = |v: usize| if v < i { v } else { v + 1 };
            face_index[m].push(
                std[m - 1]
                    .simplices()
                    .iter()
                    .map(|s| std[m].index_of(&s.iter().map(|&v| cof(v)).collect::<Vec<_>>()).expect("face"))
                    .collect::<Vec<usize>>(),
            );
        }
    }
    let simplices = k.simplices();
    let faces: Vec<Vec<usize>> = simplices
        .iter()
        .map(|s| {
            (0..s.len())
                .filter(|_| s.len() > 1)
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    k.index_of(&f).expect("closed")
                })
                .collect()
        })
        .collect();
    let mut chosen: Vec<usize> = vec![usize::MAX; simplices.len()];
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn go(
        s: usize,
        simplices: &[Vec<usize>],
        faces: &[Vec<usize>],
        ex: &[ExSimplices],
        face_index: &[Vec<Vec<usize>>],
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<u64> {
        if s == simplices.len() {
            return Ok(1);
        }
        let m = simplices[s].len() - 1;
        let mut total = 0;
        for (c, rep) in ex[m].representatives.iter().enumerate() {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
            let ok = faces[s].iter().enumerate().all(|(i, &f)| {
                let face_rep = &ex[m - 1].representatives[chosen[f]];
                face_index[m][i].iter().enumerate().all(|(j, &pos)| rep[pos] == face_rep[j])
            });
            if ok {
                chosen[s] = c;
                total += go(s + 1, simplices, faces, ex, face_index, chosen, nodes, budget)?;
            }
        }
        Ok(total)
    }
    go(0, simplices, &faces, &ex, &face_index, &mut chosen, &mut nodes, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_counts() {
        let pt = SimplicialComplex::standard(0);
        let d1 = SimplicialComplex::standard(1);
        let b2 = SimplicialComplex::boundary(2);
        assert_eq!(enumerate_simplicial_maps(&pt, &b2, 1000).unwrap().len(), 3);
        assert_eq!(enumerate_simplicial_maps(&d1, &pt, 1000).unwrap().len(), 1);
        assert_eq!(enumerate_simplicial_maps(&d1, &d1, 1000).unwrap().len(), 4);
    }

    #[test]
    fn ex_examples() {
        let pt = SimplicialComplex::standard(0);
        for n in 0..=3 {
            assert_eq!(ex_bounded(&pt, n, 1_000_000).unwrap().count, 1);
        }
        let b2 = SimplicialComplex::boundary(2);
        assert_eq!(ex_bounded(&b2, 0, 1000).unwrap().count, 3);
        assert!(ex_bounded(&pt, 4, 1000).is_err());
    }

    #[test]
    fn ex_adjunction_counts() {
        let b2 = SimplicialComplex::boundary(2);
        let d1 = SimplicialComplex::standard(1);
        for k in [d1.clone(), SimplicialComplex::horn(2, 0).unwrap(), b2.clone()] {
            for x in [d1.clone(), b2.clone()] {
                let direct = enumerate_simplicial_maps(&sd(&k), &x, 10_000_000).unwrap().len() as u64;
                assert_eq!(ex_compatible_families(&k, &x, 10_000_000).unwrap(), direct);
            }
        }
    }
}
