use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of an object inside a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

/// Index of a morphism inside a [`FinCat`]. The identity of object `x` is
/// always `Mor(x.0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismData {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// Canonical name of the identity on an object.
pub fn identity_name(object: &str) -> String {
    format!("id:{object}")
}

/// A finite category with an explicit composition table.
///
/// Morphisms `0..num_objects()` are the identities, in object order; the
/// named non-identity morphisms follow. Composition is stored in
/// diagrammatic order: `compose(f, g)` is "first `f`, then `g`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    /// Morphisms out of each object, identity first.
    out: Vec<Vec<Mor>>,
    /// Position of each morphism inside `out[src]`.
    pos_out: Vec<usize>,
    /// `table[f][pos_out[g]] = compose(f, g)` for `g` in `out[tgt f]`.
    table: Vec<Vec<Mor>>,
    /// `hom[x * n + y]`, identities included.
    hom: Vec<Vec<Mor>>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
}

impl FinCat {
    /// Builds and validates a category.
    ///
    /// `arrows` are the non-identity morphisms; they receive indices starting
    /// at `objects.len()`. `compose` is asked for every composable pair of
    /// non-identity morphisms and must return the composite (which may be an
    /// identity).
    pub fn build<F>(objects: Vec<String>, arrows: Vec<(String, Obj, Obj)>, mut compose: F) -> Result<FinCat>
    where
        F: FnMut(Mor, Mor) -> Option<Mor>,
    {
        let n = objects.len();
        let mut obj_index = HashMap::with_capacity(n);
        for (i, name) in objects.iter().enumerate() {
            if obj_index.insert(name.clone(), Obj(i)).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let mut morphisms: Vec<MorphismData> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| MorphismData {
                name: identity_name(o),
                src: Obj(i),
                tgt: Obj(i),
            })
            .collect();
        for (name, src, tgt) in arrows {
            if src.0 >= n || tgt.0 >= n {
                return Err(Error::DanglingEndpoint {
                    item: format!("morphism {name}"),
                    name: format!("object #{}", src.0.max(tgt.0)),
                });
            }
            morphisms.push(MorphismData { name, src, tgt });
        }
        let mut mor_index = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            if mor_index.insert(m.name.clone(), Mor(i)).is_some() {
                return Err(Error::DuplicateName(m.name.clone()));
            }
        }

        let m = morphisms.len();
        let mut out: Vec<Vec<Mor>> = vec![Vec::new(); n];
        let mut pos_out = vec![0; m];
        for (i, d) in morphisms.iter().enumerate() {
            pos_out[i] = out[d.src.0].len();
            out[d.src.0].push(Mor(i));
        }
        let mut hom = vec![Vec::new(); n * n];
        for (i, d) in morphisms.iter().enumerate() {
            hom[d.src.0 * n + d.tgt.0].push(Mor(i));
        }

        let mut table = Vec::with_capacity(m);
        for f in 0..m {
            let fd = &morphisms[f];
            let mut row = Vec::with_capacity(out[fd.tgt.0].len());
            for &g in &out[fd.tgt.0] {
                let c = if f < n {
                    g
                } else if g.0 < n {
                    Mor(f)
                } else {
                    let c = compose(Mor(f), g).ok_or_else(|| Error::MissingComposite {
                        first: fd.name.clone(),
                        second: morphisms[g.0].name.clone(),
                    })?;
                    let ok = c.0 < m && morphisms[c.0].src == fd.src && morphisms[c.0].tgt == morphisms[g.0].tgt;
                    if !ok {
                        return Err(Error::IllTypedComposite {
                            first: fd.name.clone(),
                            second: morphisms[g.0].name.clone(),
                            result: morphisms.get(c.0).map_or_else(|| format!("#{}", c.0), |d| d.name.clone()),
                        });
                    }
                    c
                };
                row.push(c);
            }
            table.push(row);
        }

        let cat = FinCat {
            objects,
            morphisms,
            out,
            pos_out,
            table,
            hom,
            obj_index,
            mor_index,
        };
        cat.check_associativity()?;
        Ok(cat)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.objects.len();
        for f in n..self.morphisms.len() {
            let f = Mor(f);
            for &g in &self.out[self.tgt(f).0] {
                if self.is_identity(g) {
                    continue;
                }
                let fg = self.compose(f, g);
                for &h in &self.out[self.tgt(g).0] {
                    if self.is_identity(h) {
                        continue;
                    }
                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)) {
                        return Err(Error::AssociativityViolation {
                            f: self.mor_name(f).to_string(),
                            g: self.mor_name(g).to_string(),
                            h: self.mor_name(h).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> FinCat {
        FinCat::build(Vec::new(), Vec::new(), |_, _| None).expect("empty category")
    }

    /// Discrete category on the given object names.
    pub fn discrete<S: Into<String>>(names: impl IntoIterator<Item = S>) -> FinCat {
        let objects = names.into_iter().map(Into::into).collect();
        FinCat::build(objects, Vec::new(), |_, _| None).expect("discrete category")
    }

    /// The one-object, one-morphism category.
    pub fn terminal() -> FinCat {
        FinCat::discrete(["*"])
    }

    /// The walking arrow `a -> b` with the arrow named `f`.
    pub fn arrow() -> FinCat {
        FinCat::build(vec!["a".into(), "b".into()], vec![("f".into(), Obj(0), Obj(1))], |_, _| None)
            .expect("arrow category")
    }

    /// The linear order `0 < 1 < ... < len-1` as a category.
    pub fn chain(len: usize) -> FinCat {
        let objects: Vec<String> = (0..len).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..len {
            for j in i + 1..len {
                index.insert((i, j), len + arrows.len());
                arrows.push((format!("{i}<{j}"), Obj(i), Obj(j)));
            }
        }
        let ends: Vec<(usize, usize)> = arrows.iter().map(|(_, s, t)| (s.0, t.0)).collect();
        FinCat::build(objects, arrows, |f, g| {
            let (s, _) = ends[f.0 - len];
            let (_, t) = ends[g.0 - len];
            index.get(&(s, t)).map(|&k| Mor(k))
        })
        .expect("chain category")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    /// Number of morphisms, identities included.
    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn num_non_identity(&self) -> usize {
        self.morphisms.len() - self.objects.len()
    }

    pub fn objects(&self) -> impl DoubleEndedIterator<Item = Obj> + ExactSizeIterator + Clone {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl DoubleEndedIterator<Item = Mor> + ExactSizeIterator + Clone {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn non_identity(&self) -> impl DoubleEndedIterator<Item = Mor> + ExactSizeIterator + Clone {
        (self.objects.len()..self.morphisms.len()).map(Mor)
    }

    pub fn id(&self, x: Obj) -> Mor {
        Mor(x.0)
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        f.0 < self.objects.len()
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.morphisms[f.0].src
    }

    pub fn tgt(&self, f: Mor) -> Obj {
        self.morphisms[f.0].tgt
    }

    pub fn obj_name(&self, x: Obj) -> &str {
        &self.objects[x.0]
    }

    pub fn mor_name(&self, f: Mor) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_data(&self, f: Mor) -> &MorphismData {
        &self.morphisms[f.0]
    }

    pub fn object_by_name(&self, name: &str) -> Option<Obj> {
        self.obj_index.get(name).copied()
    }

    /// Looks up a morphism by name; identities are found as `id:<object>`.
    pub fn morphism_by_name(&self, name: &str) -> Option<Mor> {
        self.mor_index.get(name).copied()
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.hom[x.0 * self.objects.len() + y.0]
    }

    /// Morphisms with source `x`, identity first.
    pub fn out_of(&self, x: Obj) -> &[Mor] {
        &self.out[x.0]
    }

    pub fn composable(&self, f: Mor, g: Mor) -> bool {
        self.tgt(f) == self.src(g)
    }

    /// Composite "first `f`, then `g`". Panics if the pair is not composable.
    pub fn compose(&self, f: Mor, g: Mor) -> Mor {
        assert!(
            self.composable(f, g),
            "compose: {} and {} are not composable",
            self.mor_name(f),
            self.mor_name(g)
        );
        self.table[f.0][self.pos_out[g.0]]
    }

    pub fn try_compose(&self, f: Mor, g: Mor) -> Option<Mor> {
        self.composable(f, g).then(|| self.table[f.0][self.pos_out[g.0]])
    }

    /// Composite of a nonempty composable path.
    pub fn compose_path(&self, path: &[Mor]) -> Option<Mor> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.try_compose(acc, g))
    }

    /// Number of composable pairs `(f, g)` with `tgt f = src g`, identities included.
    pub fn composable_pairs(&self) -> usize {
        self.morphisms.iter().map(|d| self.out[d.tgt.0].len()).sum()
    }

    /// Every non-identity pair `(f, g, f;g)`.
    pub fn nontrivial_composites(&self) -> impl Iterator<Item = (Mor, Mor, Mor)> + '_ {
        self.non_identity().flat_map(move |f| {
            self.out[self.tgt(f).0]
                .iter()
                .filter(move |&&g| !self.is_identity(g))
                .map(move |&g| (f, g, self.compose(f, g)))
        })
    }

    /// The opposite category; names are kept.
    pub fn opposite(&self) -> FinCat {
        let arrows = self
            .non_identity()
            .map(|f| (self.mor_name(f).to_string(), self.tgt(f), self.src(f)))
            .collect();
        FinCat::build(self.objects.clone(), arrows, |f, g| Some(self.compose(g, f))).expect("opposite of a valid category")
    }

    /// Same category with the objects renamed; identity names follow.
    pub fn with_object_names(&self, names: Vec<String>) -> Result<FinCat> {
        if names.len() != self.num_objects() {
            return Err(Error::PreconditionViolated("wrong number of object names".into()));
        }
        let arrows = self
            .non_identity()
            .map(|f| (self.mor_name(f).to_string(), self.src(f), self.tgt(f)))
            .collect();
        FinCat::build(names, arrows, |f, g| Some(self.compose(f, g)))
    }

    /// Same composition table under new object and non-identity morphism
    /// names.
    pub fn renamed(&self, objects: Vec<String>, arrows: Vec<String>) -> Result<FinCat> {
        let n = self.num_objects();
        if objects.len() != n || arrows.len() != self.num_morphisms() - n {
            return Err(Error::PreconditionViolated("wrong number of names".into()));
        }
        let mut out = self.clone();
        out.obj_index.clear();
        for (i, name) in objects.iter().enumerate() {
            if out.obj_index.insert(name.clone(), Obj(i)).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        out.mor_index.clear();
        for (k, m) in out.morphisms.iter_mut().enumerate() {
            m.name = if k < n { identity_name(&objects[k]) } else { arrows[k - n].clone() };
            if out.mor_index.insert(m.name.clone(), Mor(k)).is_some() {
                return Err(Error::DuplicateName(m.name.clone()));
            }
        }
        out.objects = objects;
        Ok(out)
    }

    /// Objects reachable from `x` by some morphism.
    pub fn reachable_from(&self, x: Obj) -> Vec<Obj> {
        self.objects().filter(|&y| !self.hom(x, y).is_empty()).collect()
    }
}

impl fmt::Display for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCat({} objects, {} non-identity morphisms)", self.num_objects(), self.num_non_identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_has_three_morphisms() {
        let c = FinCat::arrow();
        assert_eq!(c.num_morphisms(), 3);
        assert_eq!(c.hom(Obj(0), Obj(1)).len(), 1);
        assert!(c.hom(Obj(1), Obj(0)).is_empty());
    }

    #[test]
    fn idempotent_without_composite_is_rejected() {
        let err = FinCat::build(vec!["a".into()], vec![("f".into(), Obj(0), Obj(0))], |_, _| None).unwrap_err();
        assert!(matches!(err, Error::MissingComposite { ref first, ref second } if first == "f" && second == "f"));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // f, g endomorphisms with f;f = g, g;f = f, f;g = g, g;g = g:
        // (f;f);f = g;f = f but f;(f;f) = f;g = g.
        let err = FinCat::build(
            vec!["a".into()],
            vec![("f".into(), Obj(0), Obj(0)), ("g".into(), Obj(0), Obj(0))],
            |x, y| match (x.0, y.0) {
                (1, 1) => Some(Mor(2)),
                (2, 1) => Some(Mor(1)),
                (1, 2) | (2, 2) => Some(Mor(2)),
                _ => None,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { .. }));
    }

    #[test]
    fn chain_composes() {
        let c = FinCat::chain(3);
        let f = c.morphism_by_name("0<1").unwrap();
        let g = c.morphism_by_name("1<2").unwrap();
        assert_eq!(c.mor_name(c.compose(f, g)), "0<2");
        // ids contribute 3 + 2 + 1, the arrows 2 + 1 + 1
        assert_eq!(c.composable_pairs(), 10);
    }

    #[test]
    fn opposite_swaps_endpoints() {
        let c = FinCat::arrow().opposite();
        let f = c.morphism_by_name("f").unwrap();
        assert_eq!(c.obj_name(c.src(f)), "b");
        assert_eq!(c.opposite(), FinCat::arrow());
    }
}
