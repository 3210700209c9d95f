use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::snf::{smith_invariants, IntMatrix};
use crate::error::{Error, Result};
use crate::simplicial::{BoundedSSet, SimplicialComplex};

/// Chain complex of free abelian groups with chosen bases.
#[derive(Clone, Debug)]
#[derive(Default)]
pub struct ChainComplexZ {
    bases: Vec<Vec<String>>,
    /// `boundaries[n]: C_n -> C_{n-1}`, a `|C_{n-1}| x |C_n|` matrix; `boundaries[0]` has no rows.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplexZ {
    pub fn new(bases: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Result<ChainComplexZ> {
        if bases.len() != boundaries.len() {
            return Err(Error::InvalidComplex("one boundary matrix per dimension expected".into()));
        }
        for (n, d) in boundaries.iter().enumerate() {
            let rows = if n == 0 { 0 } else { bases[n - 1].len() };
            if d.rows() != rows || d.cols() != bases[n].len() {
                return Err(Error::InvalidComplex(format!(
                    "boundary in dimension {n} is {}x{}, expected {rows}x{}",
                    d.rows(),
                    d.cols(),
                    bases[n].len()
                )));
            }
        }
        let c = ChainComplexZ { bases, boundaries };
        c.check_boundary_squared()?;
        Ok(c)
    }

    pub fn from_complex(k: &SimplicialComplex) -> ChainComplexZ {
        let top = match k.dim() {
            None => return ChainComplexZ { bases: Vec::new(), boundaries: Vec::new() },
            Some(d) => d,
        };
        let mut local = vec![0; k.num_simplices()];
        let mut bases = vec![Vec::new(); top + 1];
        for (i, s) in k.simplices().iter().enumerate() {
            local[i] = bases[s.len() - 1].len();
            bases[s.len() - 1].push(k.simplex_name(s));
        }
        let mut triplets = vec![Vec::new(); top + 1];
        for s in k.simplices().iter().filter(|s| s.len() > 1) {
            let n = s.len() - 1;
            let col = local[k.index_of(s).expect("own simplex")];
            for i in 0..=n {
                let mut f = s.clone();
                f.remove(i);
                let row = local[k.index_of(&f).expect("closed")];
                triplets[n].push((row, col, BigInt::from(if i % 2 == 0 { 1 } else { -1 })));
            }
        }
        let boundaries = (0..=top)
            .map(|n| {
                let rows = if n == 0 { 0 } else { bases[n - 1].len() };
                IntMatrix::from_triplets(rows, bases[n].len(), std::mem::take(&mut triplets[n]))
            })
            .collect();
        ChainComplexZ { bases, boundaries }
    }

    /// Normalized chains: nondegenerate simplices, degenerate faces dropped.
    pub fn from_sset(x: &BoundedSSet) -> ChainComplexZ {
        let top = x.labels.len();
        let bases: Vec<Vec<String>> = x.labels.clone();
        let boundaries = (0..top)
            .map(|n| {
                let rows = if n == 0 { 0 } else { x.count(n - 1) };
                let mut triplets = Vec::new();
                if n > 0 {
                    for (s, faces) in x.faces[n].iter().enumerate() {
                        for (i, f) in faces.iter().enumerate() {
                            if !f.is_degenerate() {
                                triplets.push((f.index, s, BigInt::from(if i % 2 == 0 { 1 } else { -1 })));
                            }
                        }
                    }
                }
                IntMatrix::from_triplets(rows, x.count(n), triplets)
            })
            .collect();
        ChainComplexZ { bases, boundaries }
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    pub fn basis(&self, n: usize) -> &[String] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, n: usize) -> Option<&IntMatrix> {
        self.boundaries.get(n)
    }

    pub fn check_boundary_squared(&self) -> Result<()> {
        for n in 2..self.boundaries.len() {
            if !self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero() {
                return Err(Error::InvalidComplex(format!("boundary squared is nonzero in dimension {n}")));
            }
        }
        Ok(())
    }

    /// `H_n` for every `n` up to the top dimension.
    pub fn homology(&self) -> HomologyProfile {
        self.homology_through(self.bases.len())
    }

    /// `H_n` for `n < dims` only.
    fn homology_through(&self, dims: usize) -> HomologyProfile {
        let invariants: Vec<Vec<BigInt>> = self.boundaries.par_iter().map(smith_invariants).collect();
        let rank = |n: usize| invariants.get(n).map_or(0, Vec::len);
        let groups = (0..dims.min(self.bases.len()))
            .map(|n| HomologyGroup {
                betti: self.bases[n].len() - rank(n) - rank(n + 1),
                torsion: invariants
                    .get(n + 1)
                    .map(|d| d.iter().filter(|v| *v > &BigInt::from(1)).cloned().collect())
                    .unwrap_or_default(),
            })
            .collect();
        HomologyProfile::new(groups)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Torsion coefficients, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> HomologyGroup {
        HomologyGroup {
            betti: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Integral homology, trailing zero groups dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyProfile {
    groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn new(mut groups: Vec<HomologyGroup>) -> HomologyProfile {
        while groups.last().is_some_and(HomologyGroup::is_zero) {
            groups.pop();
        }
        HomologyProfile { groups }
    }

    pub fn from_betti(betti: &[usize]) -> HomologyProfile {
        HomologyProfile::new(betti.iter().map(|&b| HomologyGroup { betti: b, torsion: Vec::new() }).collect())
    }

    pub fn point() -> HomologyProfile {
        HomologyProfile::from_betti(&[1])
    }

    /// The sphere of dimension `d`; `None` is the empty space.
    pub fn sphere(d: Option<usize>) -> HomologyProfile {
        match d {
            None => HomologyProfile::default(),
            Some(0) => HomologyProfile::from_betti(&[2]),
            Some(d) => {
                let mut b = vec![0; d + 1];
                b[0] = 1;
                b[d] = 1;
                HomologyProfile::from_betti(&b)
            }
        }
    }

    pub fn groups(&self) -> &[HomologyGroup] {
        &self.groups
    }

    pub fn group(&self, n: usize) -> HomologyGroup {
        self.groups.get(n).cloned().unwrap_or_else(HomologyGroup::zero)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(n, g)| if n % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// First dimension where the profiles differ.
    pub fn first_difference(&self, other: &HomologyProfile) -> Option<usize> {
        (0..self.groups.len().max(other.groups.len())).find(|&n| self.group(n) != other.group(n))
    }

    /// Lines of the form `H_n = Z^b ⊕ Z/t`.
    pub fn lines(&self) -> Vec<String> {
        if self.groups.is_empty() {
            return vec!["H_* = 0".to_string()];
        }
        self.groups.iter().enumerate().map(|(n, g)| format!("H_{n} = {g}")).collect()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lines().join("\n"))
    }
}

/// Anything with an integral chain complex.
pub trait ChainSource {
    fn chain_complex(&self) -> Result<ChainComplexZ>;
}

impl ChainSource for SimplicialComplex {
    fn chain_complex(&self) -> Result<ChainComplexZ> {
        Ok(ChainComplexZ::from_complex(self))
    }
}

impl ChainSource for BoundedSSet {
    fn chain_complex(&self) -> Result<ChainComplexZ> {
        if self.truncated {
            return Err(Error::TruncatedInput { max_dim: self.max_dim });
        }
        Ok(ChainComplexZ::from_sset(self))
    }
}

pub fn homology(x: &impl ChainSource) -> Result<HomologyProfile> {
    Ok(x.chain_complex()?.homology())
}

/// Homology of a truncated simplicial set below its cutoff, where it is
/// already determined.
pub fn truncated_homology(x: &BoundedSSet) -> HomologyProfile {
    let c = ChainComplexZ::from_sset(x);
    if x.truncated {
        c.homology_through(x.max_dim)
    } else {
        c.homology()
    }
}

