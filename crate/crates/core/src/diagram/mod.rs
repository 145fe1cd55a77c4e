//! Diagrams of finite sets and injections over a finite shape.

mod cocone;
mod colimit;
mod witness;
mod zigzag;

pub use cocone::{build_cocone_forest, pushout_inj, BuildError, Pushout};
pub use colimit::{colimit_set, has_cocone, Cocone, CoconeCheck, CoconeError, ColimitResult, Collision};
pub(crate) use witness::{non_forest_witness, non_preorder_witness};
pub use witness::{shrink_witness, witness_no_cocone, HasCocone, NoCoconeWitness, WitnessError, WitnessKind};
pub use zigzag::{zigzag_action, IllFormedWord, Orientation, ZigzagStep, ZigzagWord};

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::FinCategory;

/// A functor from a finite category into finite sets and injections.
///
/// Carrier elements are labelled; labels are unique within a carrier but may
/// repeat across objects. Actions are index maps between carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinInjDiagram {
    shape: FinCategory,
    carriers: Vec<Vec<String>>,
    actions: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("action of `{0}` is not injective")]
    NotInjective(String),
    #[error("action of identity `{0}` is not the identity")]
    IdentityViolation(String),
    #[error("F({g} ∘ {f}) != F({g}) ∘ F({f})")]
    FunctorialityViolation { g: String, f: String },
}

/// Name-level carriers and actions, as stored in a diagram file. Identity
/// actions may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DiagramPresentation {
    pub carriers: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub actions: BTreeMap<String, Vec<[String; 2]>>,
}

/// Resolves names against `shape` and validates.
pub fn validate_diagram(shape: FinCategory, raw: &DiagramPresentation) -> Result<FinInjDiagram, DiagramError> {
    let mismatch = |m: String| DiagramError::CarrierMismatch(m);
    for name in raw.carriers.keys() {
        if shape.object_index(name).is_none() {
            return Err(mismatch(format!("carrier for unknown object `{name}`")));
        }
    }
    for name in raw.actions.keys() {
        if shape.morphism_index(name).is_none() {
            return Err(mismatch(format!("action for unknown morphism `{name}`")));
        }
    }
    let carriers: Vec<Vec<String>> = shape
        .objects()
        .iter()
        .map(|o| {
            raw.carriers
                .get(o)
                .cloned()
                .ok_or_else(|| mismatch(format!("no carrier for `{o}`")))
        })
        .collect::<Result<_, _>>()?;
    let mut actions = Vec::with_capacity(shape.morphism_count());
    for f in 0..shape.morphism_count() {
        let (dom, cod) = (&carriers[shape.dom(f)], &carriers[shape.cod(f)]);
        let Some(pairs) = raw.actions.get(shape.name(f)) else {
            if shape.is_identity(f) {
                actions.push((0..dom.len()).collect());
                continue;
            }
            return Err(mismatch(format!("no action for `{}`", shape.name(f))));
        };
        let index_in = |set: &Vec<String>, label: &str| {
            set.iter()
                .position(|e| e == label)
                .ok_or_else(|| mismatch(format!("`{label}` is not in the carrier used by `{}`", shape.name(f))))
        };
        let mut map = vec![usize::MAX; dom.len()];
        for [x, y] in pairs {
            let (xi, yi) = (index_in(dom, x)?, index_in(cod, y)?);
            if map[xi] != usize::MAX {
                return Err(mismatch(format!("`{x}` mapped twice by `{}`", shape.name(f))));
            }
            map[xi] = yi;
        }
        if let Some(xi) = map.iter().position(|&y| y == usize::MAX) {
            return Err(mismatch(format!("`{}` is not mapped by `{}`", dom[xi], shape.name(f))));
        }
        actions.push(map);
    }
    FinInjDiagram::new(shape, carriers, actions)
}

impl FinInjDiagram {
    /// Index-level constructor; checks sizes, injectivity and functoriality.
    pub fn new(shape: FinCategory, carriers: Vec<Vec<String>>, actions: Vec<Vec<usize>>) -> Result<Self, DiagramError> {
        let mismatch = |m: String| DiagramError::CarrierMismatch(m);
        if carriers.len() != shape.object_count() || actions.len() != shape.morphism_count() {
            return Err(mismatch("wrong number of carriers or actions".into()));
        }
        for (o, set) in carriers.iter().enumerate() {
            let mut seen = HashMap::new();
            for e in set {
                if seen.insert(e.as_str(), ()).is_some() {
                    return Err(mismatch(format!(
                        "`{e}` appears twice in the carrier of `{}`",
                        shape.object_name(o)
                    )));
                }
            }
        }
        for f in 0..shape.morphism_count() {
            let (d, c) = (carriers[shape.dom(f)].len(), carriers[shape.cod(f)].len());
            let map = &actions[f];
            if map.len() != d || map.iter().any(|&y| y >= c) {
                return Err(mismatch(format!("action of `{}` has the wrong shape", shape.name(f))));
            }
            let mut hit = vec![false; c];
            for &y in map {
                if std::mem::replace(&mut hit[y], true) {
                    return Err(DiagramError::NotInjective(shape.name(f).into()));
                }
            }
        }
        for o in 0..shape.object_count() {
            let id = shape.identity(o);
            if actions[id].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(DiagramError::IdentityViolation(shape.name(id).into()));
            }
        }
        for f in 0..shape.morphism_count() {
            for g in shape.morphisms_from(shape.cod(f)) {
                let gf = shape.compose(g, f).unwrap();
                let ok = (0..actions[f].len()).all(|x| actions[g][actions[f][x]] == actions[gf][x]);
                if !ok {
                    return Err(DiagramError::FunctorialityViolation {
                        g: shape.name(g).into(),
                        f: shape.name(f).into(),
                    });
                }
            }
        }
        Ok(FinInjDiagram {
            shape,
            carriers,
            actions,
        })
    }

    pub fn shape(&self) -> &FinCategory {
        &self.shape
    }

    pub fn carrier(&self, o: usize) -> &[String] {
        &self.carriers[o]
    }

    pub fn carriers(&self) -> &[Vec<String>] {
        &self.carriers
    }

    pub fn action(&self, f: usize) -> &[usize] {
        &self.actions[f]
    }

    pub fn apply(&self, f: usize, x: usize) -> usize {
        self.actions[f][x]
    }

    pub fn total_size(&self) -> usize {
        self.carriers.iter().map(Vec::len).sum()
    }

    pub fn to_presentation(&self) -> DiagramPresentation {
        let carriers = self
            .shape
            .objects()
            .iter()
            .cloned()
            .zip(self.carriers.iter().cloned())
            .collect();
        let actions = (0..self.shape.morphism_count())
            .filter(|&f| !self.shape.is_identity(f))
            .map(|f| {
                let (d, c) = (self.shape.dom(f), self.shape.cod(f));
                let pairs = self.actions[f]
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| [self.carriers[d][x].clone(), self.carriers[c][y].clone()])
                    .collect();
                (self.shape.name(f).to_string(), pairs)
            })
            .collect();
        DiagramPresentation { carriers, actions }
    }
}

/// A partial injection between `0..source_len` and `0..target_len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    source_len: usize,
    target_len: usize,
    map: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a partial injection: {0}")]
pub struct NotPartialInjection(pub String);

impl PartialInjection {
    pub fn new(target_len: usize, map: Vec<Option<usize>>) -> Result<Self, NotPartialInjection> {
        let mut hit = vec![false; target_len];
        for y in map.iter().flatten() {
            if *y >= target_len {
                return Err(NotPartialInjection(format!("{y} out of range")));
            }
            if std::mem::replace(&mut hit[*y], true) {
                return Err(NotPartialInjection(format!("{y} hit twice")));
            }
        }
        Ok(PartialInjection {
            source_len: map.len(),
            target_len,
            map,
        })
    }

    pub fn total(target_len: usize, map: &[usize]) -> Result<Self, NotPartialInjection> {
        Self::new(target_len, map.iter().map(|&y| Some(y)).collect())
    }

    pub fn identity(n: usize) -> Self {
        PartialInjection {
            source_len: n,
            target_len: n,
            map: (0..n).map(Some).collect(),
        }
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map[x]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    /// Elements where the map is defined.
    pub fn domain(&self) -> Vec<usize> {
        self.pairs().map(|(x, _)| x).collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PartialInjection) -> PartialInjection {
        assert_eq!(self.target_len, next.source_len, "partial injections do not compose");
        PartialInjection {
            source_len: self.source_len,
            target_len: next.target_len,
            map: self.map.iter().map(|y| y.and_then(|y| next.map[y])).collect(),
        }
    }

    pub fn inverse(&self) -> PartialInjection {
        let mut map = vec![None; self.target_len];
        for (x, y) in self.pairs() {
            map[y] = Some(x);
        }
        PartialInjection {
            source_len: self.target_len,
            target_len: self.source_len,
            map,
        }
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    pub fn is_empty_map(&self) -> bool {
        self.map.iter().all(Option::is_none)
    }

    /// A restriction of the identity: every defined point is fixed.
    pub fn is_partial_identity(&self) -> bool {
        self.source_len == self.target_len && self.pairs().all(|(x, y)| x == y)
    }
}
