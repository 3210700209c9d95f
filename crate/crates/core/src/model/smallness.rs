use std::collections::HashMap;
use std::sync::Arc;

use crate::congruence::{finite_colimit, DiagramInCat};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, FinCat, FinFunctor};

/// Comparison `colim Hom(C, X_k) -> Hom(C, colim X_k)` for a finite chain.
#[derive(Clone, Debug)]
pub struct SmallnessVerdict {
    pub bijective: bool,
    /// Classes of the colimit of hom-sets.
    pub colimit_of_homs: usize,
    /// Functors into the colimit of the chain.
    pub homs_into_colimit: usize,
    pub witness: Option<String>,
}

/// The chain diagram `X_0 -> X_1 -> ... -> X_n` over the chain index.
pub fn chain_diagram(stages: &[Arc<FinCat>], maps: &[FinFunctor]) -> Result<DiagramInCat> {
    if stages.is_empty() || maps.len() + 1 != stages.len() {
        return Err(Error::PreconditionViolated("a chain needs one map between consecutive stages".into()));
    }
    let n = stages.len();
    let index = Arc::new(FinCat::chain(n));
    // Non-identity index arrows are `i<j` in lexicographic order.
    let mut edges = Vec::new();
    for i in 0..n {
        let mut acc = FinFunctor::identity(stages[i].clone());
        for map in &maps[i..] {
            acc = acc.then(map)?;
            edges.push(acc.clone());
        }
    }
    DiagramInCat::new(index, stages.to_vec(), edges)
}

pub fn smallness_witness(c: &Arc<FinCat>, stages: &[Arc<FinCat>], maps: &[FinFunctor], cap: usize, budget: u64) -> Result<SmallnessVerdict> {
    let d = chain_diagram(stages, maps)?;
    let colim = finite_colimit(&d, cap)?;

    // Colimit of hom-sets: (k, F) ~ (k + 1, F ; map_k).
    let homs: Vec<Vec<FinFunctor>> = stages.iter().map(|x| enumerate_functors(c, x, budget)).collect::<Result<_>>()?;
    let mut offset = Vec::new();
    let mut all = Vec::new();
    let mut lookup: Vec<HashMap<(Vec<_>, Vec<_>), usize>> = Vec::new();
    for (k, hs) in homs.iter().enumerate() {
        offset.push(all.len());
        let mut table = HashMap::new();
        for (idx, h) in hs.iter().enumerate() {
            table.insert((h.obj_map().to_vec(), h.mor_map().to_vec()), all.len() + idx);
        }
        lookup.push(table);
        all.extend(hs.iter().map(|h| (k, h.clone())));
    }
    let mut uf = crate::congruence::UnionFind::new(all.len());
    for (idx, (k, h)) in all.iter().enumerate() {
        if *k + 1 < stages.len() {
            let pushed = h.then(&maps[*k])?;
            let j = lookup[k + 1][&(pushed.obj_map().to_vec(), pushed.mor_map().to_vec())];
            uf.union(idx, j);
        }
    }
    let mut class_image: HashMap<usize, (Vec<_>, Vec<_>)> = HashMap::new();
    let mut witness = None;
    for (idx, (k, h)) in all.iter().enumerate() {
        let img = h.then(&colim.cocone[*k])?;
        let key = (img.obj_map().to_vec(), img.mor_map().to_vec());
        let root = uf.find(idx);
        match class_image.get(&root) {
            Some(prev) if *prev != key => {
                witness.get_or_insert_with(|| format!("class of stage {k} functor has two images"));
            }
            Some(_) => {}
            None => {
                class_image.insert(root, key);
            }
        }
    }
    let into = enumerate_functors(c, &colim.category, budget)?;
    let mut hit: HashMap<(Vec<_>, Vec<_>), usize> = HashMap::new();
    for key in class_image.values() {
        *hit.entry(key.clone()).or_default() += 1;
    }
    if witness.is_none() {
        if let Some((_, n)) = hit.iter().find(|(_, &n)| n > 1) {
            witness = Some(format!("{n} classes of the hom colimit map to the same functor"));
        }
    }
    if witness.is_none() {
        if let Some(h) = into.iter().find(|h| !hit.contains_key(&(h.obj_map().to_vec(), h.mor_map().to_vec()))) {
            witness = Some(format!(
                "functor with object map {:?} into the colimit does not factor through a stage",
                h.obj_map().iter().map(|o| colim.category.obj_name(*o)).collect::<Vec<_>>()
            ));
        }
    }
    Ok(SmallnessVerdict {
        bijective: witness.is_none(),
        colimit_of_homs: class_image.len(),
        homs_into_colimit: into.len(),
        witness,
    })
}
