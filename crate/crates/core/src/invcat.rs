//! Finite inverse categories and their representation by partial injections.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{DiagramPresentation, PartialInjection};
use crate::fincat::FinCategory;

/// A finite category in which every morphism has a unique pseudoinverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinInverseCategory {
    base: FinCategory,
    pinv: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InverseError {
    #[error("`{0}` has no pseudoinverse")]
    NoPseudoinverse(String),
    #[error("`{f}` has pseudoinverses `{first}` and `{second}`")]
    NonUniquePseudoinverse { f: String, first: String, second: String },
    #[error("declared pseudoinverse of `{f}` is `{declared}`, expected `{expected}`")]
    WrongPseudoinverse {
        f: String,
        declared: String,
        expected: String,
    },
}

fn is_pseudoinverse(c: &FinCategory, f: usize, g: usize) -> bool {
    if c.dom(g) != c.cod(f) || c.cod(g) != c.dom(f) {
        return false;
    }
    let fgf = c.compose(g, f).and_then(|gf| c.compose(f, gf));
    let gfg = c.compose(f, g).and_then(|fg| c.compose(g, fg));
    fgf == Some(f) && gfg == Some(g)
}

/// Searches every morphism `cod(f) -> dom(f)` for pseudoinverses of `f`.
pub fn validate_inverse(c: &FinCategory) -> Result<FinInverseCategory, InverseError> {
    let mut pinv = Vec::with_capacity(c.morphism_count());
    for f in 0..c.morphism_count() {
        let mut found = c.hom(c.cod(f), c.dom(f)).filter(|&g| is_pseudoinverse(c, f, g));
        let Some(g) = found.next() else {
            return Err(InverseError::NoPseudoinverse(c.name(f).into()));
        };
        if let Some(other) = found.next() {
            return Err(InverseError::NonUniquePseudoinverse {
                f: c.name(f).into(),
                first: c.name(g).into(),
                second: c.name(other).into(),
            });
        }
        pinv.push(g);
    }
    Ok(FinInverseCategory { base: c.clone(), pinv })
}

impl FinInverseCategory {
    /// Validates and additionally checks a declared pseudoinverse assignment.
    pub fn with_declared(c: &FinCategory, declared: &[usize]) -> Result<Self, InverseError> {
        let inv = validate_inverse(c)?;
        for (f, (&d, &e)) in declared.iter().zip(&inv.pinv).enumerate() {
            if d != e {
                return Err(InverseError::WrongPseudoinverse {
                    f: c.name(f).into(),
                    declared: c.name(d).into(),
                    expected: c.name(e).into(),
                });
            }
        }
        Ok(inv)
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn pinv(&self, f: usize) -> usize {
        self.pinv[f]
    }

    /// `f⁻¹ ∘ f`, an idempotent on `dom(f)`.
    pub fn domain_idempotent(&self, f: usize) -> usize {
        self.base.compose(self.pinv[f], f).expect("composable")
    }

    pub fn is_idempotent(&self, f: usize) -> bool {
        let c = &self.base;
        c.dom(f) == c.cod(f) && c.compose(f, f) == Some(f)
    }
}

/// Laws every inverse category satisfies. Empty on valid input.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LawReport {
    pub violations: Vec<String>,
}

impl LawReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn left_cancellable(c: &FinCategory, f: usize) -> bool {
    let into: Vec<usize> = c.morphisms_into(c.dom(f)).collect();
    into.iter().enumerate().all(|(i, &g)| {
        into[i + 1..]
            .iter()
            .all(|&h| !c.parallel(g, h) || c.compose(f, g) != c.compose(f, h))
    })
}

pub fn check_inverse_laws(ic: &FinInverseCategory) -> LawReport {
    let c = &ic.base;
    let mut violations = Vec::new();
    for f in 0..c.morphism_count() {
        if ic.pinv(ic.pinv(f)) != f {
            violations.push(format!("pinv is not involutive at `{}`", c.name(f)));
        }
        if c.is_identity(f) && ic.pinv(f) != f {
            violations.push(format!("pinv moves identity `{}`", c.name(f)));
        }
        for g in c.morphisms_from(c.cod(f)) {
            let gf = c.compose(g, f).expect("composable");
            if c.compose(ic.pinv(f), ic.pinv(g)) != Some(ic.pinv(gf)) {
                violations.push(format!(
                    "pinv does not reverse composition at ({}, {})",
                    c.name(g),
                    c.name(f)
                ));
            }
        }
        let split = ic.domain_idempotent(f) == c.identity(c.dom(f));
        if left_cancellable(c, f) != split {
            violations.push(format!("`{}`: monic and split monic disagree", c.name(f)));
        }
    }
    let idempotents: Vec<usize> = (0..c.morphism_count()).filter(|&e| ic.is_idempotent(e)).collect();
    for (i, &e) in idempotents.iter().enumerate() {
        for &e2 in &idempotents[i + 1..] {
            if c.dom(e) == c.dom(e2) && c.compose(e, e2) != c.compose(e2, e) {
                violations.push(format!(
                    "idempotents `{}` and `{}` do not commute",
                    c.name(e),
                    c.name(e2)
                ));
            }
        }
    }
    LawReport { violations }
}

/// Every endomorphism is idempotent.
pub fn is_idempotent_category(ic: &FinInverseCategory) -> bool {
    let c = &ic.base;
    (0..c.morphism_count())
        .filter(|&f| c.dom(f) == c.cod(f))
        .all(|f| ic.is_idempotent(f))
}

/// Representation of an inverse category by partial injections.
///
/// The carrier at `X` is the disjoint union over all `Z` of `Hom(Z, X)`, as
/// `(Z, g)` pairs; `f` acts by `g ↦ f ∘ g` on those `g` with
/// `g = f⁻¹ ∘ f ∘ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WagnerPreston {
    pub carriers: Vec<Vec<(usize, usize)>>,
    pub maps: Vec<PartialInjection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("image of `{g} ∘ {f}` is not the composite of the images")]
    NotFunctorial { g: String, f: String },
    #[error("`{0}` and `{1}` have the same image")]
    NotFaithful(String, String),
    #[error("`{0}`: monic but not total, or total but not monic")]
    MonicMismatch(String),
}

pub fn wagner_preston(ic: &FinInverseCategory) -> WagnerPreston {
    let c = &ic.base;
    let carriers: Vec<Vec<(usize, usize)>> = (0..c.object_count())
        .map(|x| {
            let mut elems: Vec<(usize, usize)> = c.morphisms_into(x).map(|g| (c.dom(g), g)).collect();
            elems.sort_unstable();
            elems
        })
        .collect();
    let maps = (0..c.morphism_count())
        .map(|f| {
            let (x, y) = (c.dom(f), c.cod(f));
            let back = ic.domain_idempotent(f);
            let map = carriers[x]
                .iter()
                .map(|&(_, g)| {
                    let fg = c.compose(f, g).expect("composable");
                    (c.compose(back, g) == Some(g)).then(|| {
                        carriers[y]
                            .iter()
                            .position(|&(_, h)| h == fg)
                            .expect("fg lands in the carrier")
                    })
                })
                .collect();
            PartialInjection::new(carriers[y].len(), map).expect("restriction of f∘- to its domain is injective")
        })
        .collect();
    WagnerPreston { carriers, maps }
}

impl WagnerPreston {
    /// Element labels `Z/g` at object `x`.
    pub fn labels(&self, c: &FinCategory, x: usize) -> Vec<String> {
        self.carriers[x]
            .iter()
            .map(|&(z, g)| format!("{}/{}", c.object_name(z), c.name(g)))
            .collect()
    }

    /// Functoriality, faithfulness, and monic exactly when total.
    pub fn verify(&self, c: &FinCategory) -> Result<(), RepresentationError> {
        for f in 0..c.morphism_count() {
            for g in c.morphisms_from(c.cod(f)) {
                let gf = c.compose(g, f).expect("composable");
                if self.maps[f].then(&self.maps[g]) != self.maps[gf] {
                    return Err(RepresentationError::NotFunctorial {
                        g: c.name(g).into(),
                        f: c.name(f).into(),
                    });
                }
            }
            for g in f + 1..c.morphism_count() {
                if c.parallel(f, g) && self.maps[f] == self.maps[g] {
                    return Err(RepresentationError::NotFaithful(c.name(f).into(), c.name(g).into()));
                }
            }
            if left_cancellable(c, f) != self.maps[f].is_total() {
                return Err(RepresentationError::MonicMismatch(c.name(f).into()));
            }
        }
        Ok(())
    }

    /// Carriers and partial actions in the element-pair style of diagram
    /// files.
    pub fn to_presentation(&self, c: &FinCategory) -> DiagramPresentation {
        let labels: Vec<Vec<String>> = (0..c.object_count()).map(|x| self.labels(c, x)).collect();
        let carriers: BTreeMap<String, Vec<String>> = (0..c.object_count())
            .map(|x| (c.object_name(x).to_string(), labels[x].clone()))
            .collect();
        let actions = (0..c.morphism_count())
            .map(|f| {
                let (x, y) = (c.dom(f), c.cod(f));
                let pairs = self.maps[f]
                    .pairs()
                    .map(|(a, b)| [labels[x][a].clone(), labels[y][b].clone()])
                    .collect();
                (c.name(f).to_string(), pairs)
            })
            .collect();
        DiagramPresentation { carriers, actions }
    }
}
