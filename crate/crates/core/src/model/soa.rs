use std::sync::Arc;

use super::lifting::LiftingSquare;
use super::rlp::lifting_counterexample;
use crate::congruence::pushout;
use crate::error::{Error, Result};
use crate::fincat::{is_acyclic, FinCat, FinFunctor};
use crate::simplicial::{generators_up_to, longest_chain, Generator, GeneratorSet};

/// Generator truncation used when none is given: one past the longest chain
/// of the codomain.
pub fn default_max_dim(g: &FinFunctor) -> usize {
    longest_chain(g.target()) + 1
}

#[derive(Clone, Debug)]
pub struct RlpVerdict {
    pub holds: bool,
    pub max_dim: usize,
    pub generators_checked: Vec<String>,
    /// First failing generator and square.
    pub counterexample: Option<(String, LiftingSquare)>,
}

/// Right lifting property of `g` against the generators of dimension at most
/// `max_dim`.
pub fn has_rlp(g: &FinFunctor, set: GeneratorSet, max_dim: usize, budget: u64) -> Result<RlpVerdict> {
    let gens = generators_up_to(set, max_dim)?;
    rlp_against(g, &gens, max_dim, budget)
}

fn rlp_against(g: &FinFunctor, gens: &[Generator], max_dim: usize, budget: u64) -> Result<RlpVerdict> {
    let mut checked = Vec::new();
    for gen in gens {
        checked.push(gen.name());
        if let Some(sq) = lifting_counterexample(&gen.inclusion, g, budget)? {
            return Ok(RlpVerdict {
                holds: false,
                max_dim,
                generators_checked: checked,
                counterexample: Some((gen.name(), sq)),
            });
        }
    }
    Ok(RlpVerdict {
        holds: true,
        max_dim,
        generators_checked: checked,
        counterexample: None,
    })
}

/// A generator glued in along the top of a square without a lift.
#[derive(Clone, Debug)]
pub struct AttachedCell {
    pub generator: String,
    pub square: LiftingSquare,
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub cells: Vec<AttachedCell>,
    pub category: Arc<FinCat>,
    /// From the previous stage (or the source) into `category`.
    pub map: FinFunctor,
}

/// A relative cell complex: a finite sequence of pushouts of generators.
#[derive(Clone, Debug)]
pub struct CellRecord {
    pub source: Arc<FinCat>,
    pub stages: Vec<Stage>,
    /// Source into the last stage.
    pub composite: FinFunctor,
}

impl CellRecord {
    pub fn last(&self) -> &Arc<FinCat> {
        self.stages.last().map_or(&self.source, |s| &s.category)
    }

    pub fn num_cells(&self) -> usize {
        self.stages.iter().map(|s| s.cells.len()).sum()
    }

    /// Recomputes every stage from its cells and checks the stored data.
    pub fn validate(&self, cap: usize) -> Result<()> {
        let mut cur = self.source.clone();
        let mut composite = FinFunctor::identity(cur.clone());
        for (k, stage) in self.stages.iter().enumerate() {
            let (cat, map) = glue_cells(&cur, &stage.cells, None, cap, k)?;
            if *cat != *stage.category || map.obj_map() != stage.map.obj_map() || map.mor_map() != stage.map.mor_map() {
                return Err(Error::PreconditionViolated(format!("stage {k} does not match its recomputed pushout")));
            }
            composite = composite.then(&stage.map)?;
            cur = stage.category.clone();
        }
        if composite.obj_map() != self.composite.obj_map() || composite.mor_map() != self.composite.mor_map() {
            return Err(Error::PreconditionViolated("composite differs from the stage chain".into()));
        }
        Ok(())
    }
}

/// `f = record.composite ; q`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub record: CellRecord,
    pub q: FinFunctor,
    pub max_dim: usize,
    /// Whether `q` was verified to have the lifting property.
    pub complete: bool,
}

impl Factorization {
    pub fn recomposes_to(&self, f: &FinFunctor) -> bool {
        match self.record.composite.then(&self.q) {
            Ok(c) => c.obj_map() == f.obj_map() && c.mor_map() == f.mor_map(),
            Err(_) => false,
        }
    }
}

/// Attaches the cells to `u` one pushout at a time. With `q` given, also
/// returns the induced map out of the result.
fn glue_cells(
    u: &Arc<FinCat>,
    cells: &[AttachedCell],
    q: Option<&FinFunctor>,
    cap: usize,
    stage: usize,
) -> Result<(Arc<FinCat>, FinFunctor)> {
    glue_cells_with(u, cells, q, cap, stage).map(|(c, m, _)| (c, m))
}

fn glue_cells_with(
    u: &Arc<FinCat>,
    cells: &[AttachedCell],
    q: Option<&FinFunctor>,
    cap: usize,
    stage: usize,
) -> Result<(Arc<FinCat>, FinFunctor, Option<FinFunctor>)> {
    let mut cat = u.clone();
    let mut into = FinFunctor::identity(u.clone());
    let mut qcur = q.cloned();
    for (k, cell) in cells.iter().enumerate() {
        let top = cell.square.top.then(&into)?;
        let po = pushout(&cell.square.left, &top, cap)?;
        // Keep the names of the old part, tag the new cell.
        let p = &po.category;
        let mut obj_names: Vec<String> = vec![String::new(); p.num_objects()];
        let mut mor_names: Vec<String> = vec![String::new(); p.num_morphisms()];
        let tag = format!("s{stage}c{k}");
        for x in po.left.source().objects() {
            obj_names[po.left.obj(x).0] = format!("{tag}:{}", po.left.source().obj_name(x));
        }
        for m in po.left.source().morphisms() {
            mor_names[po.left.mor(m).0] = format!("{tag}:{}", po.left.source().mor_name(m));
        }
        for x in cat.objects() {
            obj_names[po.right.obj(x).0] = cat.obj_name(x).to_string();
        }
        for m in cat.morphisms() {
            mor_names[po.right.mor(m).0] = cat.mor_name(m).to_string();
        }
        for m in p.morphisms() {
            if mor_names[m.0].is_empty() {
                mor_names[m.0] = format!("{tag}:{}", p.mor_name(m));
            }
        }
        let n = p.num_objects();
        let renamed = Arc::new(p.renamed(obj_names, mor_names[n..].to_vec())?);
        let left = FinFunctor::new(po.left.source().clone(), renamed.clone(), po.left.obj_map().to_vec(), po.left.mor_map().to_vec())?;
        let right = FinFunctor::new(cat.clone(), renamed.clone(), po.right.obj_map().to_vec(), po.right.mor_map().to_vec())?;
        if let Some(qc) = &qcur {
            let po2 = crate::congruence::Pushout {
                category: renamed.clone(),
                left,
                right: right.clone(),
            };
            qcur = Some(po2.induced(&cell.square.bottom, qc)?);
        }
        into = into.then(&right)?;
        cat = renamed;
    }
    Ok((cat, into, qcur))
}

/// Small object argument: factors `f` as a relative cell complex followed by
/// a map with the lifting property against the generators up to `max_dim`.
///
/// Each stage attaches, for every generator, the first square (in search
/// order) that has no lift. Stops as soon as no such square exists.
pub fn soa_factorize(
    f: &FinFunctor,
    set: GeneratorSet,
    max_dim: usize,
    max_stages: usize,
    cap: usize,
    budget: u64,
) -> Result<Factorization> {
    if !is_acyclic(f.source()) || !is_acyclic(f.target()) {
        return Err(Error::PreconditionViolated("small object argument needs acyclic categories".into()));
    }
    let gens = generators_up_to(set, max_dim)?;
    let source = f.source().clone();
    let mut record = CellRecord {
        source: source.clone(),
        stages: Vec::new(),
        composite: FinFunctor::identity(source),
    };
    let mut q = f.clone();
    loop {
        let mut cells = Vec::new();
        for gen in &gens {
            if let Some(square) = lifting_counterexample(&gen.inclusion, &q, budget)? {
                cells.push(AttachedCell {
                    generator: gen.name(),
                    square,
                });
            }
        }
        if cells.is_empty() {
            return Ok(Factorization {
                record,
                q,
                max_dim,
                complete: true,
            });
        }
        if record.stages.len() == max_stages {
            return Err(Error::StageBudgetExceeded {
                stages: max_stages,
                partial: Box::new(Factorization {
                    record,
                    q,
                    max_dim,
                    complete: false,
                }),
            });
        }
        let k = record.stages.len();
        let (category, map, q_next) = glue_cells_with(record.last(), &cells, Some(&q), cap, k)?;
        if !is_acyclic(&category) {
            return Err(Error::PreconditionViolated(format!("stage {k} is not acyclic")));
        }
        record.composite = record.composite.then(&map)?;
        record.stages.push(Stage { cells, category, map });
        q = q_next.expect("induced map requested");
    }
}
