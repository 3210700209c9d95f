//! JSON file formats for categories, functors, relations, diagrams,
//! complexes and lifting squares.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::congruence::{DiagramInCat, RelationPair};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Mor, Obj};
use crate::model::LiftingSquare;
use crate::simplicial::{BoundedSSet, FormalSimplex, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeJson {
    pub first: String,
    pub second: String,
    /// `second ∘ first`
    pub result: String,
}

/// Identities are never listed; they are named `id:<object>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismJson>,
    #[serde(default)]
    pub compose: Vec<ComposeJson>,
}

impl CategoryJson {
    pub fn from_category(c: &FinCat) -> CategoryJson {
        CategoryJson {
            objects: c.object_names().to_vec(),
            morphisms: c
                .non_identity()
                .map(|f| MorphismJson {
                    name: c.mor_name(f).to_string(),
                    src: c.obj_name(c.src(f)).to_string(),
                    tgt: c.obj_name(c.tgt(f)).to_string(),
                })
                .collect(),
            compose: c
                .nontrivial_composites()
                .map(|(f, g, h)| ComposeJson {
                    first: c.mor_name(f).to_string(),
                    second: c.mor_name(g).to_string(),
                    result: c.mor_name(h).to_string(),
                })
                .collect(),
        }
    }

    /// Validates the table: endpoints, duplicates, typing, totality,
    /// associativity and unit laws.
    pub fn to_category(&self) -> Result<FinCat> {
        let mut obj_index = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if obj_index.insert(o.as_str(), Obj(i)).is_some() {
                return Err(Error::DuplicateName(o.clone()));
            }
        }
        let endpoint = |item: &str, name: &str| {
            obj_index.get(name).copied().ok_or_else(|| Error::DanglingEndpoint {
                item: item.to_string(),
                name: name.to_string(),
            })
        };
        let n = self.objects.len();
        let mut arrows = Vec::with_capacity(self.morphisms.len());
        let mut mor_index: HashMap<String, Mor> = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| (crate::fincat::identity_name(o), Mor(i)))
            .collect();
        for (i, m) in self.morphisms.iter().enumerate() {
            let item = format!("morphism {}", m.name);
            let s = endpoint(&item, &m.src)?;
            let t = endpoint(&item, &m.tgt)?;
            if mor_index.insert(m.name.clone(), Mor(n + i)).is_some() {
                return Err(Error::DuplicateName(m.name.clone()));
            }
            arrows.push((m.name.clone(), s, t));
        }
        let mut table: HashMap<(Mor, Mor), Mor> = HashMap::new();
        for e in &self.compose {
            let item = format!("compose entry ({}, {})", e.first, e.second);
            let look = |name: &str| {
                mor_index.get(name).copied().ok_or_else(|| Error::DanglingEndpoint {
                    item: item.clone(),
                    name: name.to_string(),
                })
            };
            let (f, g, h) = (look(&e.first)?, look(&e.second)?, look(&e.result)?);
            if f.0 < n || g.0 < n {
                return Err(Error::UnitViolation {
                    morphism: if f.0 < n { e.first.clone() } else { e.second.clone() },
                    detail: "composites with identities are implicit and must not be listed".into(),
                });
            }
            let ends = |m: Mor| if m.0 < n { (Obj(m.0), Obj(m.0)) } else { (arrows[m.0 - n].1, arrows[m.0 - n].2) };
            let typed = ends(f).1 == ends(g).0 && ends(h).0 == ends(f).0 && ends(h).1 == ends(g).1;
            if !typed {
                return Err(Error::IllTypedComposite {
                    first: e.first.clone(),
                    second: e.second.clone(),
                    result: e.result.clone(),
                });
            }
            if table.insert((f, g), h).is_some() {
                return Err(Error::DuplicateName(format!("compose entry ({}, {})", e.first, e.second)));
            }
        }
        FinCat::build(self.objects.clone(), arrows, |f, g| table.get(&(f, g)).copied())
    }
}

/// A category given inline or by a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(CategoryJson),
}

/// Identities are mapped implicitly. `source` and `target` may be omitted
/// when the context supplies them (diagram edges).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<CategoryRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<CategoryRef>,
    pub object_map: BTreeMap<String, String>,
    #[serde(default)]
    pub morphism_map: BTreeMap<String, String>,
}

impl FunctorJson {
    /// Object and morphism maps only.
    pub fn from_functor(f: &FinFunctor) -> FunctorJson {
        let (c, d) = (f.source(), f.target());
        FunctorJson {
            source: None,
            target: None,
            object_map: c.objects().map(|x| (c.obj_name(x).to_string(), d.obj_name(f.obj(x)).to_string())).collect(),
            morphism_map: c
                .non_identity()
                .map(|m| (c.mor_name(m).to_string(), d.mor_name(f.mor(m)).to_string()))
                .collect(),
        }
    }

    /// Self-contained form with both categories inline.
    pub fn from_functor_inline(f: &FinFunctor) -> FunctorJson {
        FunctorJson {
            source: Some(CategoryRef::Inline(CategoryJson::from_category(f.source()))),
            target: Some(CategoryRef::Inline(CategoryJson::from_category(f.target()))),
            ..FunctorJson::from_functor(f)
        }
    }

    pub fn to_functor(&self, source: &Arc<FinCat>, target: &Arc<FinCat>) -> Result<FinFunctor> {
        let mut obj_map = Vec::with_capacity(source.num_objects());
        for x in source.objects() {
            let name = source.obj_name(x);
            let image = self
                .object_map
                .get(name)
                .ok_or_else(|| Error::NotAFunctor(format!("object {name} has no image")))?;
            obj_map.push(target.object_by_name(image).ok_or_else(|| Error::DanglingEndpoint {
                item: format!("object_map[{name}]"),
                name: image.clone(),
            })?);
        }
        for key in self.object_map.keys() {
            if source.object_by_name(key).is_none() {
                return Err(Error::DanglingEndpoint {
                    item: "object_map".into(),
                    name: key.clone(),
                });
            }
        }
        for key in self.morphism_map.keys() {
            if source.morphism_by_name(key).is_none() {
                return Err(Error::DanglingEndpoint {
                    item: "morphism_map".into(),
                    name: key.clone(),
                });
            }
        }
        let mut mor_map = Vec::with_capacity(source.num_morphisms());
        for m in source.morphisms() {
            let name = source.mor_name(m);
            let image = match self.morphism_map.get(name) {
                Some(image) => target.morphism_by_name(image).ok_or_else(|| Error::DanglingEndpoint {
                    item: format!("morphism_map[{name}]"),
                    name: image.clone(),
                })?,
                None if source.is_identity(m) => target.id(obj_map[source.src(m).0]),
                None => return Err(Error::NotAFunctor(format!("morphism {name} has no image"))),
            };
            mor_map.push(image);
        }
        FinFunctor::new(source.clone(), target.clone(), obj_map, mor_map)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn relative(base: &Path, name: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new("")).join(name)
}

pub fn load_category(path: &Path) -> Result<Arc<FinCat>> {
    let json: CategoryJson = read_json(path)?;
    Ok(Arc::new(json.to_category()?))
}

fn resolve(r: &CategoryRef, base: &Path) -> Result<Arc<FinCat>> {
    match r {
        CategoryRef::Path(p) => load_category(&relative(base, p)),
        CategoryRef::Inline(c) => Ok(Arc::new(c.to_category()?)),
    }
}

/// Loads a functor whose file names its source and target.
pub fn load_functor(path: &Path) -> Result<FinFunctor> {
    let json: FunctorJson = read_json(path)?;
    let missing = |side: &str| Error::PreconditionViolated(format!("{}: functor file has no `{side}`", path.display()));
    let source = resolve(json.source.as_ref().ok_or_else(|| missing("source"))?, path)?;
    let target = resolve(json.target.as_ref().ok_or_else(|| missing("target"))?, path)?;
    json.to_functor(&source, &target)
}

/// Loads a functor between known categories; `source`/`target` fields in the
/// file are ignored.
pub fn load_functor_between(path: &Path, source: &Arc<FinCat>, target: &Arc<FinCat>) -> Result<FinFunctor> {
    let json: FunctorJson = read_json(path)?;
    json.to_functor(source, target)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    #[serde(default)]
    pub object_pairs: Vec<(String, String)>,
    /// Sequences are listed in composition order, first morphism first.
    #[serde(default)]
    pub sequence_pairs: Vec<(Vec<String>, Vec<String>)>,
}

impl RelationJson {
    pub fn to_relation(&self, c: &FinCat) -> Result<RelationPair> {
        let obj = |name: &str| {
            c.object_by_name(name).ok_or_else(|| Error::InvalidRelation(format!("unknown object `{name}`")))
        };
        let seq = |names: &[String]| -> Result<Vec<Mor>> {
            if names.is_empty() {
                return Err(Error::InvalidRelation("empty morphism sequence".into()));
            }
            names
                .iter()
                .map(|n| c.morphism_by_name(n).ok_or_else(|| Error::InvalidRelation(format!("unknown morphism `{n}`"))))
                .collect()
        };
        let mut r = RelationPair::new();
        for (a, b) in &self.object_pairs {
            r = r.objects(obj(a)?, obj(b)?);
        }
        for (u, v) in &self.sequence_pairs {
            r = r.sequences(seq(u)?, seq(v)?);
        }
        Ok(r)
    }
}

pub fn load_relation(path: &Path, c: &FinCat) -> Result<RelationPair> {
    read_json::<RelationJson>(path)?.to_relation(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub index: String,
    pub nodes: BTreeMap<String, String>,
    #[serde(default)]
    pub edges: BTreeMap<String, String>,
}

pub fn load_diagram(path: &Path) -> Result<DiagramInCat> {
    let json: DiagramJson = read_json(path)?;
    let index = load_category(&relative(path, &json.index))?;
    let mut nodes = Vec::with_capacity(index.num_objects());
    for x in index.objects() {
        let name = index.obj_name(x);
        let file = json.nodes.get(name).ok_or_else(|| Error::DanglingEndpoint {
            item: "diagram nodes".into(),
            name: name.to_string(),
        })?;
        nodes.push(load_category(&relative(path, file))?);
    }
    let mut edges = Vec::with_capacity(index.num_non_identity());
    for u in index.non_identity() {
        let name = index.mor_name(u);
        let file = json.edges.get(name).ok_or_else(|| Error::DanglingEndpoint {
            item: "diagram edges".into(),
            name: name.to_string(),
        })?;
        let (s, t) = (&nodes[index.src(u).0], &nodes[index.tgt(u).0]);
        edges.push(load_functor_between(&relative(path, file), s, t)?);
    }
    DiagramInCat::new(index, nodes, edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub simplices: Vec<Vec<String>>,
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let index: HashMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let generating = self
            .simplices
            .iter()
            .map(|s| {
                s.iter()
                    .map(|v| {
                        index
                            .get(v.as_str())
                            .copied()
                            .ok_or_else(|| Error::InvalidComplex(format!("unknown vertex `{v}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::new(self.vertices.clone(), generating)
    }

    /// Maximal simplices only.
    pub fn from_complex(k: &SimplicialComplex) -> ComplexJson {
        ComplexJson {
            vertices: k.vertices().to_vec(),
            simplices: k
                .maximal_simplices()
                .iter()
                .map(|s| s.iter().map(|&v| k.vertices()[v].clone()).collect())
                .collect(),
        }
    }
}

pub fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    read_json::<ComplexJson>(path)?.to_complex()
}

/// Four functor files, resolved relative to the square file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareJson {
    pub left: String,
    pub right: String,
    pub top: String,
    pub bottom: String,
}

/// The corners come from `left` and `right`; `top` and `bottom` are read
/// against them.
pub fn load_square(path: &Path) -> Result<LiftingSquare> {
    let json: SquareJson = read_json(path)?;
    let left = load_functor(&relative(path, &json.left))?;
    let right = load_functor(&relative(path, &json.right))?;
    let top = load_functor_between(&relative(path, &json.top), left.source(), right.source())?;
    let bottom = load_functor_between(&relative(path, &json.bottom), left.target(), right.target())?;
    LiftingSquare::new(left, right, top, bottom)
}

pub fn category_value(c: &FinCat) -> Value {
    serde_json::to_value(CategoryJson::from_category(c)).expect("serializable")
}

pub fn functor_value(f: &FinFunctor) -> Value {
    serde_json::to_value(FunctorJson::from_functor(f)).expect("serializable")
}

pub fn functor_value_inline(f: &FinFunctor) -> Value {
    serde_json::to_value(FunctorJson::from_functor_inline(f)).expect("serializable")
}

fn formal_value(x: &BoundedSSet, s: &FormalSimplex) -> Value {
    if s.is_degenerate() {
        json!({"simplex": x.labels[s.dim][s.index], "degeneracy": s.surjection})
    } else {
        json!({"simplex": x.labels[s.dim][s.index]})
    }
}

pub fn sset_value(x: &BoundedSSet) -> Value {
    let dims: Vec<Value> = (0..x.labels.len())
        .map(|n| {
            let simplices: Vec<Value> = (0..x.count(n))
                .map(|s| {
                    let faces: Vec<Value> = if n == 0 {
                        Vec::new()
                    } else {
                        x.faces[n][s].iter().map(|f| formal_value(x, f)).collect()
                    };
                    json!({"label": x.labels[n][s], "faces": faces})
                })
                .collect();
            json!({"dim": n, "simplices": simplices})
        })
        .collect();
    json!({"max_dim": x.max_dim, "truncated": x.truncated, "nondegenerate": dims})
}
