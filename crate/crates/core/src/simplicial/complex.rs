use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite ordered abstract simplicial complex. Every listed vertex is a
/// 0-simplex; simplices are stored as sorted vertex-index lists, ordered by
/// dimension and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SimplicialComplex {
    /// Downward closure of `generating` (maximal simplices may be given alone).
    pub fn new(vertices: Vec<String>, generating: Vec<Vec<usize>>) -> Result<SimplicialComplex> {
        let n = vertices.len();
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let mut all: std::collections::BTreeSet<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        for mut s in generating {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            if s.iter().any(|&v| v >= n) {
                return Err(Error::InvalidComplex(format!("simplex refers to vertex #{} of {n}", s[s.len() - 1])));
            }
            if all.contains(&s) {
                continue;
            }
            // All nonempty subsets.
            let k = s.len();
            if k > 24 {
                return Err(Error::InvalidComplex("simplex dimension too large".into()));
            }
            for mask in 1u32..(1 << k) {
                all.insert((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect());
            }
        }
        let mut simplices: Vec<Vec<usize>> = all.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(SimplicialComplex {
            vertices,
            simplices,
            index,
        })
    }

    /// Like [`SimplicialComplex::new`] but keeps only the vertices that occur
    /// in `generating`, in their original order.
    pub fn spanned(names: &[String], generating: Vec<Vec<usize>>) -> Result<SimplicialComplex> {
        let mut used = vec![false; names.len()];
        for s in &generating {
            for &v in s {
                if v >= names.len() {
                    return Err(Error::InvalidComplex(format!("vertex #{v} out of range")));
                }
                used[v] = true;
            }
        }
        let mut local = vec![usize::MAX; names.len()];
        let mut vertices = Vec::new();
        for (v, name) in names.iter().enumerate() {
            if used[v] {
                local[v] = vertices.len();
                vertices.push(name.clone());
            }
        }
        let generating = generating.into_iter().map(|s| s.into_iter().map(|v| local[v]).collect()).collect();
        SimplicialComplex::new(vertices, generating)
    }

    fn standard_names(n: usize) -> Vec<String> {
        (0..=n).map(|i| i.to_string()).collect()
    }

    /// The standard simplex on vertices `0..=n`.
    pub fn standard(n: usize) -> SimplicialComplex {
        SimplicialComplex::new(Self::standard_names(n), vec![(0..=n).collect()]).expect("standard simplex")
    }

    /// The boundary of the standard `n`-simplex; empty for `n = 0`.
    pub fn boundary(n: usize) -> SimplicialComplex {
        let faces = (0..=n).filter(|_| n > 0).map(|i| (0..=n).filter(|&v| v != i).collect()).collect();
        SimplicialComplex::spanned(&Self::standard_names(n), faces).expect("boundary")
    }

    /// The horn: every facet of the `n`-simplex except the one opposite `k`.
    pub fn horn(n: usize, k: usize) -> Result<SimplicialComplex> {
        if n == 0 || k > n {
            return Err(Error::InvalidGenerator(format!("horn ({n}, {k}) needs 0 <= k <= n and n >= 1")));
        }
        let faces = (0..=n).filter(|&i| i != k).map(|i| (0..=n).filter(|&v| v != i).collect()).collect();
        SimplicialComplex::spanned(&Self::standard_names(n), faces)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension of the complex, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.simplices.iter().filter(move |s| s.len() == d + 1)
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index.contains_key(simplex)
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex).copied()
    }

    /// `"{a,b,c}"` from the vertex names.
    pub fn simplex_name(&self, simplex: &[usize]) -> String {
        format!("{{{}}}", simplex.iter().map(|&v| self.vertices[v].as_str()).collect::<Vec<_>>().join(","))
    }

    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|v| t.binary_search(v).is_ok()))
            })
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_complexes() {
        assert_eq!(SimplicialComplex::standard(2).f_vector(), vec![3, 3, 1]);
        assert_eq!(SimplicialComplex::boundary(2).f_vector(), vec![3, 3]);
        assert_eq!(SimplicialComplex::boundary(3).f_vector(), vec![4, 6, 4]);
        assert!(SimplicialComplex::boundary(0).is_empty());
        assert_eq!(SimplicialComplex::horn(2, 1).unwrap().f_vector(), vec![3, 2]);
        let h = SimplicialComplex::horn(1, 0).unwrap();
        assert_eq!(h.vertices(), &["0".to_string()]);
        assert!(SimplicialComplex::horn(0, 0).is_err());
    }

    #[test]
    fn closure_and_euler() {
        let k = SimplicialComplex::new(vec!["a".into(), "b".into(), "c".into(), "d".into()], vec![vec![0, 1, 2], vec![2, 3]])
            .unwrap();
        assert_eq!(k.f_vector(), vec![4, 4, 1]);
        assert_eq!(k.euler_characteristic(), 1);
        assert_eq!(k.maximal_simplices(), vec![vec![2, 3], vec![0, 1, 2]]);
        assert_eq!(k.simplex_name(&[0, 2]), "{a,c}");
    }
}
