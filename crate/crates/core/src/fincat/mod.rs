//! Finite categories given by a full composition table.
//!
//! Morphisms and objects are addressed by dense indices. Names are kept for
//! error messages and serialization only.

mod congruence;
mod functor;
mod skeleton;

pub use congruence::{
    congruence_close, monic_reflection, quotient, Congruence, CongruenceError, MonicReflection, Quotient,
};
pub use functor::{FunctorError, FunctorMap};
pub use skeleton::{skeleton_poset, NotAPreorder, Skeleton};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A validated finite category.
///
/// `compose(g, f)` is `g ∘ f` and is defined exactly when `cod(f) = dom(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    table: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("composite {g} ∘ {f} is not listed")]
    MissingComposite { g: String, f: String },
    #[error("composite {g} ∘ {f} = {result} has the wrong domain or codomain")]
    DomCodMismatch { g: String, f: String, result: String },
    #[error("composite {g} ∘ {f} listed twice with different results `{first}` and `{second}`")]
    ConflictingComposite {
        g: String,
        f: String,
        first: String,
        second: String,
    },
    #[error("identity law fails: {left} ∘ {right} = {result}")]
    IdentityViolation {
        left: String,
        right: String,
        result: String,
    },
    #[error("associativity fails for ({h}, {g}, {f})")]
    AssociativityViolation { h: String, g: String, f: String },
}

/// Name-level description of a category, as read from a category file.
///
/// Identities are implicit and named `id_<object>`; composites with an
/// identity may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CategoryPresentation {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDecl>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

/// Builds a [`FinCategory`] from a presentation and checks every law.
pub fn validate_category(raw: &CategoryPresentation) -> Result<FinCategory, CategoryError> {
    let mut object_index = HashMap::new();
    for (i, name) in raw.objects.iter().enumerate() {
        if object_index.insert(name.as_str(), i).is_some() {
            return Err(CategoryError::DuplicateObject(name.clone()));
        }
    }
    let lookup_object = |name: &str| {
        object_index
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    };

    let mut morphisms: Vec<Morphism> = raw
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| Morphism {
            name: identity_name(o),
            dom: i,
            cod: i,
        })
        .collect();
    for decl in &raw.morphisms {
        morphisms.push(Morphism {
            name: decl.name.clone(),
            dom: lookup_object(&decl.dom)?,
            cod: lookup_object(&decl.cod)?,
        });
    }
    let mut morphism_index = HashMap::new();
    for (i, m) in morphisms.iter().enumerate() {
        if morphism_index.insert(m.name.clone(), i).is_some() {
            return Err(CategoryError::DuplicateMorphism(m.name.clone()));
        }
    }
    let lookup_morphism = |name: &str| {
        morphism_index
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()))
    };

    let m = morphisms.len();
    let mut table: Vec<Option<usize>> = vec![None; m * m];
    for [g, f, r] in &raw.compose {
        let (gi, fi, ri) = (lookup_morphism(g)?, lookup_morphism(f)?, lookup_morphism(r)?);
        let slot = &mut table[gi * m + fi];
        match slot {
            Some(prev) if *prev != ri => {
                return Err(CategoryError::ConflictingComposite {
                    g: g.clone(),
                    f: f.clone(),
                    first: morphisms[*prev].name.clone(),
                    second: r.clone(),
                })
            }
            _ => *slot = Some(ri),
        }
    }
    // Composites with identities are implicit.
    let identity: Vec<usize> = (0..raw.objects.len()).collect();
    for f in 0..m {
        let (d, c) = (morphisms[f].dom, morphisms[f].cod);
        table[identity[c] * m + f].get_or_insert(f);
        table[f * m + identity[d]].get_or_insert(f);
    }
    FinCategory::from_parts(raw.objects.clone(), morphisms, identity, |g, f| table[g * m + f])
}

impl FinCategory {
    /// Index-level constructor. `entry(g, f)` supplies `g ∘ f`; it is only
    /// consulted for composable pairs and any value it returns elsewhere is
    /// rejected as a domain/codomain mismatch.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        mut entry: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<Self, CategoryError> {
        let m = morphisms.len();
        let n = objects.len();
        for mor in &morphisms {
            if mor.dom >= n || mor.cod >= n {
                return Err(CategoryError::UnknownObject(format!(
                    "index {} or {} of `{}`",
                    mor.dom, mor.cod, mor.name
                )));
            }
        }
        if identity.len() != n || identity.iter().any(|&i| i >= m) {
            return Err(CategoryError::UnknownMorphism("identity assignment".into()));
        }
        let name = |i: usize| morphisms[i].name.clone();

        let mut table = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                let e = entry(g, f);
                let composable = morphisms[f].cod == morphisms[g].dom;
                match (composable, e) {
                    (true, None) => return Err(CategoryError::MissingComposite { g: name(g), f: name(f) }),
                    (true, Some(r)) => {
                        if r >= m || morphisms[r].dom != morphisms[f].dom || morphisms[r].cod != morphisms[g].cod {
                            return Err(CategoryError::DomCodMismatch {
                                g: name(g),
                                f: name(f),
                                result: if r < m { name(r) } else { format!("#{r}") },
                            });
                        }
                        table[g * m + f] = Some(r);
                    }
                    (false, Some(r)) => {
                        return Err(CategoryError::DomCodMismatch {
                            g: name(g),
                            f: name(f),
                            result: if r < m { name(r) } else { format!("#{r}") },
                        })
                    }
                    (false, None) => {}
                }
            }
        }
        let cat = FinCategory {
            objects,
            morphisms,
            identity,
            table,
        };
        cat.check_laws()?;
        Ok(cat)
    }

    fn check_laws(&self) -> Result<(), CategoryError> {
        for (o, &id) in self.identity.iter().enumerate() {
            if self.morphisms[id].dom != o || self.morphisms[id].cod != o {
                return Err(CategoryError::IdentityViolation {
                    left: self.morphisms[id].name.clone(),
                    right: self.morphisms[id].name.clone(),
                    result: format!("not an endomorphism of `{}`", self.objects[o]),
                });
            }
        }
        for f in 0..self.morphism_count() {
            let idc = self.identity(self.cod(f));
            let idd = self.identity(self.dom(f));
            let left = self.compose(idc, f).expect("checked composable");
            if left != f {
                return Err(CategoryError::IdentityViolation {
                    left: self.name(idc).into(),
                    right: self.name(f).into(),
                    result: self.name(left).into(),
                });
            }
            let right = self.compose(f, idd).expect("checked composable");
            if right != f {
                return Err(CategoryError::IdentityViolation {
                    left: self.name(f).into(),
                    right: self.name(idd).into(),
                    result: self.name(right).into(),
                });
            }
        }
        for f in 0..self.morphism_count() {
            for g in self.morphisms_from(self.cod(f)) {
                let gf = self.compose(g, f).expect("composable");
                for h in self.morphisms_from(self.cod(g)) {
                    let hg = self.compose(h, g).expect("composable");
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(CategoryError::AssociativityViolation {
                            h: self.name(h).into(),
                            g: self.name(g).into(),
                            f: self.name(f).into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        FinCategory {
            objects: Vec::new(),
            morphisms: Vec::new(),
            identity: Vec::new(),
            table: Vec::new(),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.dom(f)] == f
    }

    /// `g ∘ f`, or `None` when `cod(f) != dom(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.morphisms.len() + f]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn parallel(&self, f: usize, g: usize) -> bool {
        self.dom(f) == self.dom(g) && self.cod(f) == self.cod(g)
    }

    pub fn hom(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(move |&f| self.dom(f) == a && self.cod(f) == b)
    }

    pub fn morphisms_from(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(move |&f| self.dom(f) == a)
    }

    pub fn morphisms_into(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(move |&f| self.cod(f) == b)
    }

    /// Objects joined by a zigzag share a class. Classes are sorted and
    /// listed by least member; the empty category has none.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.object_count());
        for m in &self.morphisms {
            uf.union(m.dom, m.cod);
        }
        let (labels, count) = uf.labels();
        let mut classes = vec![Vec::new(); count];
        for (o, l) in labels.into_iter().enumerate() {
            classes[l].push(o);
        }
        classes
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Every morphism is left-cancellable.
    pub fn is_monic(&self) -> bool {
        self.first_non_monic().is_none()
    }

    /// A witness `(f, g, h)` with `g != h` and `f ∘ g = f ∘ h`.
    pub fn first_non_monic(&self) -> Option<(usize, usize, usize)> {
        let m = self.morphism_count();
        for f in 0..m {
            let into: Vec<usize> = self.morphisms_into(self.dom(f)).collect();
            for (a, &g) in into.iter().enumerate() {
                for &h in &into[a + 1..] {
                    if self.parallel(g, h) && self.compose(f, g) == self.compose(f, h) {
                        return Some((f, g, h));
                    }
                }
            }
        }
        None
    }

    /// At most one morphism between any ordered pair of objects.
    pub fn is_preorder(&self) -> bool {
        self.first_parallel_pair().is_none()
    }

    /// The first pair of distinct parallel morphisms in index order.
    pub fn first_parallel_pair(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            if let Some(&j) = seen.get(&(m.dom, m.cod)) {
                return Some((j, i));
            }
            seen.insert((m.dom, m.cod), i);
        }
        None
    }

    /// Name-level presentation with identities left implicit.
    ///
    /// Identities are renamed to `id_<object>`, so a category whose identity
    /// names differ does not round-trip names exactly.
    pub fn to_presentation(&self) -> CategoryPresentation {
        let label = |f: usize| -> String {
            if self.is_identity(f) {
                identity_name(&self.objects[self.dom(f)])
            } else {
                self.morphisms[f].name.clone()
            }
        };
        let non_identity: Vec<usize> = (0..self.morphism_count()).filter(|&f| !self.is_identity(f)).collect();
        let morphisms = non_identity
            .iter()
            .map(|&f| MorphismDecl {
                name: label(f),
                dom: self.objects[self.dom(f)].clone(),
                cod: self.objects[self.cod(f)].clone(),
            })
            .collect();
        let mut compose = Vec::new();
        for &g in &non_identity {
            for &f in &non_identity {
                if let Some(r) = self.compose(g, f) {
                    compose.push([label(g), label(f), label(r)]);
                }
            }
        }
        CategoryPresentation {
            objects: self.objects.clone(),
            morphisms,
            compose,
        }
    }
}
