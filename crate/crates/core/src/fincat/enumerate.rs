//! Exhaustive enumeration of small categories up to isomorphism.

use std::collections::HashSet;

use super::category::{FinCat, Mor, Obj};

/// Size limits for [`enumerate_categories`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_objects: usize,
    pub max_non_identity: usize,
    /// Non-identity endomorphisms allowed on each object.
    pub max_endo: usize,
}

/// Every category within the bounds, one per isomorphism class, in a fixed
/// order: by object count, then by hom-count matrix, then by discovery.
pub fn enumerate_categories(bounds: EnumerationBounds) -> Vec<FinCat> {
    let mut out = Vec::new();
    for k in 0..=bounds.max_objects {
        let mut h = vec![0usize; k * k];
        let mut shells = Vec::new();
        hom_matrices(&mut h, 0, k, bounds, &mut shells);
        for h in shells {
            Tables::new(k, &h).run(&mut out);
        }
    }
    out
}

fn hom_matrices(h: &mut Vec<usize>, pos: usize, k: usize, b: EnumerationBounds, out: &mut Vec<Vec<usize>>) {
    if pos == k * k {
        if is_canonical_shell(h, k) {
            out.push(h.clone());
        }
        return;
    }
    let used: usize = h[..pos].iter().sum();
    let limit = if pos / k == pos % k { b.max_endo } else { b.max_non_identity };
    for v in 0..=limit.min(b.max_non_identity - used) {
        h[pos] = v;
        hom_matrices(h, pos + 1, k, b, out);
    }
    h[pos] = 0;
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    heap_permute(&mut p, k, &mut out);
    out.sort();
    out
}

fn heap_permute(p: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
    if n <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..n {
        heap_permute(p, n - 1, out);
        let j = if n.is_multiple_of(2) { i } else { 0 };
        p.swap(j, n - 1);
    }
}

fn permuted(h: &[usize], k: usize, p: &[usize]) -> Vec<usize> {
    // Position (p[x], p[y]) of the result holds h[x][y].
    let mut r = vec![0; k * k];
    for x in 0..k {
        for y in 0..k {
            r[p[x] * k + p[y]] = h[x * k + y];
        }
    }
    r
}

fn is_canonical_shell(h: &[usize], k: usize) -> bool {
    permutations(k).iter().all(|p| permuted(h, k, p).as_slice() >= h)
}

/// Backtracking over composition tables for one hom-count matrix.
struct Tables {
    k: usize,
    /// (src, tgt) of each non-identity morphism, grouped by hom-set.
    ends: Vec<(usize, usize)>,
    /// Composable pairs of non-identity morphisms.
    pairs: Vec<(usize, usize)>,
    /// `pair_index[f * m + g]`
    pair_index: Vec<Option<usize>>,
    /// Values: `< m` a non-identity morphism, `m + x` the identity on `x`.
    table: Vec<Option<usize>>,
    automorphisms: Vec<Vec<usize>>,
    seen: HashSet<Vec<usize>>,
}

impl Tables {
    fn new(k: usize, h: &[usize]) -> Tables {
        let mut ends = Vec::new();
        for x in 0..k {
            for y in 0..k {
                ends.extend(std::iter::repeat_n((x, y), h[x * k + y]));
            }
        }
        let m = ends.len();
        let mut pairs = Vec::new();
        let mut pair_index = vec![None; m * m];
        for f in 0..m {
            for g in 0..m {
                if ends[f].1 == ends[g].0 {
                    pair_index[f * m + g] = Some(pairs.len());
                    pairs.push((f, g));
                }
            }
        }
        let automorphisms = permutations(k).into_iter().filter(|p| permuted(h, k, p) == h).collect();
        Tables {
            k,
            table: vec![None; pairs.len()],
            ends,
            pairs,
            pair_index,
            automorphisms,
            seen: HashSet::new(),
        }
    }

    fn m(&self) -> usize {
        self.ends.len()
    }

    /// Composite of two values, `None` while undetermined.
    fn comp(&self, a: usize, b: usize) -> Option<usize> {
        let m = self.m();
        if a >= m {
            return Some(b);
        }
        if b >= m {
            return Some(a);
        }
        self.table[self.pair_index[a * m + b].expect("composable")]
    }

    fn associative_so_far(&self) -> bool {
        let m = self.m();
        for &(f, g) in &self.pairs {
            let Some(fg) = self.comp(f, g) else { continue };
            for h in (0..m).filter(|&h| self.ends[h].0 == self.ends[g].1) {
                let Some(gh) = self.comp(g, h) else { continue };
                if let (Some(l), Some(r)) = (self.comp(fg, h), self.comp(f, gh)) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(mut self, out: &mut Vec<FinCat>) {
        self.fill(0, out);
    }

    fn fill(&mut self, i: usize, out: &mut Vec<FinCat>) {
        if i == self.pairs.len() {
            self.record(out);
            return;
        }
        let (f, g) = self.pairs[i];
        let (s, t) = (self.ends[f].0, self.ends[g].1);
        let m = self.m();
        let mut candidates: Vec<usize> = (0..m).filter(|&c| self.ends[c] == (s, t)).collect();
        if s == t {
            candidates.push(m + s);
        }
        for c in candidates {
            self.table[i] = Some(c);
            if self.associative_so_far() {
                self.fill(i + 1, out);
            }
        }
        self.table[i] = None;
    }

    /// Smallest encoding of the table over all relabellings that fix the
    /// hom-count matrix.
    fn canonical(&self) -> Vec<usize> {
        let m = self.m();
        let mut best: Option<Vec<usize>> = None;
        for p in &self.automorphisms {
            // Hom-sets in the relabelled order, each a block of old indices.
            let mut blocks: Vec<((usize, usize), Vec<usize>)> = Vec::new();
            for f in 0..m {
                let key = (p[self.ends[f].0], p[self.ends[f].1]);
                match blocks.iter_mut().find(|b| b.0 == key) {
                    Some(b) => b.1.push(f),
                    None => blocks.push((key, vec![f])),
                }
            }
            blocks.sort();
            let block_perms: Vec<Vec<Vec<usize>>> = blocks.iter().map(|b| permutations(b.1.len())).collect();
            let mut choice = vec![0usize; blocks.len()];
            loop {
                let mut new_index = vec![0; m];
                let mut next = 0;
                for (b, (_, members)) in blocks.iter().enumerate() {
                    for (j, &f) in members.iter().enumerate() {
                        new_index[f] = next + block_perms[b][choice[b]][j];
                    }
                    next += members.len();
                }
                let mut old_of = vec![0; m];
                for f in 0..m {
                    old_of[new_index[f]] = f;
                }
                let code: Vec<usize> = self
                    .pairs
                    .iter()
                    .map(|&(f, g)| (new_index[f], new_index[g]))
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .map(|(nf, ng)| {
                        let v = self.comp(old_of[nf], old_of[ng]).expect("complete table");
                        if v < m {
                            new_index[v]
                        } else {
                            m + p[v - m]
                        }
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
                let mut b = 0;
                while b < choice.len() {
                    choice[b] += 1;
                    if choice[b] < block_perms[b].len() {
                        break;
                    }
                    choice[b] = 0;
                    b += 1;
                }
                if b == choice.len() {
                    break;
                }
            }
        }
        best.unwrap_or_default()
    }

    fn record(&mut self, out: &mut Vec<FinCat>) {
        let code = self.canonical();
        if !self.seen.insert(code) {
            return;
        }
        let m = self.m();
        let objects: Vec<String> = (0..self.k).map(|x| ((b'a' + x as u8) as char).to_string()).collect();
        let arrows = self
            .ends
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| (format!("m{i}"), Obj(s), Obj(t)))
            .collect();
        let k = self.k;
        let cat = FinCat::build(objects, arrows, |f, g| {
            let v = self.comp(f.0 - k, g.0 - k)?;
            Some(if v < m { Mor(v + k) } else { Mor(v - m) })
        })
        .expect("enumerated tables are categories");
        out.push(cat);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(max_objects: usize, max_non_identity: usize, max_endo: usize) -> usize {
        enumerate_categories(EnumerationBounds {
            max_objects,
            max_non_identity,
            max_endo,
        })
        .len()
    }

    #[test]
    fn monoid_counts_match_known_sequence() {
        // Monoids of order 1, 2, 3, 4 up to isomorphism: 1, 2, 7, 35.
        let one_object = |n: usize| count(1, n, n) - count(1, n - 1, n - 1);
        assert_eq!(count(0, 0, 0), 1);
        assert_eq!(count(1, 0, 0), 2);
        assert_eq!(one_object(1), 2);
        assert_eq!(one_object(2), 7);
        assert_eq!(one_object(3), 35);
    }

    #[test]
    fn two_object_thin_categories() {
        // Up to isomorphism: discrete, arrow, walking isomorphism.
        let cats = enumerate_categories(EnumerationBounds {
            max_objects: 2,
            max_non_identity: 2,
            max_endo: 0,
        });
        let two: Vec<_> = cats.iter().filter(|c| c.num_objects() == 2).collect();
        // discrete, arrow, two parallel arrows, walking isomorphism
        assert_eq!(two.len(), 4);
    }
}
