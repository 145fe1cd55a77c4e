//! JSON documents for categories, posets, diagrams, cocones and verdicts.
//!
//! Every document is an object with a `kind` field. See the README for the
//! grammar.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decide::{CoconeDemo, Evidence, Verdict};
use crate::diagram::{
    validate_diagram, Cocone, Collision, DiagramError, DiagramPresentation, FinInjDiagram, Orientation, WitnessKind,
};
use crate::fincat::{validate_category, CategoryError, CategoryPresentation, FinCategory, MorphismDecl};
use crate::invcat::{validate_inverse, FinInverseCategory, InverseError, WagnerPreston};
use crate::poset::{FinPoset, PosetError, TreeNode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum Document {
    Category(CategoryDoc),
    Poset(PosetDoc),
    Diagram(DiagramDoc),
    Cocone(CoconeDoc),
    Verdict(VerdictDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Poset(_) => "poset",
            Document::Diagram(_) => "diagram",
            Document::Cocone(_) => "cocone",
            Document::Verdict(_) => "verdict",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDecl>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    /// Declared pseudoinverses, for inverse categories.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pinv: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    /// `[a, b]` means `a < b`; the order is the reflexive-transitive closure.
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
}

/// A shape given by a path relative to the referring file, or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ShapeRef {
    Path(String),
    Inline(Box<Document>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub shape: ShapeRef,
    pub carriers: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub actions: BTreeMap<String, Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collision: Option<CollisionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionDoc {
    pub object: String,
    pub first: String,
    pub second: String,
    /// `[object, element]` at each point of the connecting path.
    pub path: Vec<[String; 2]>,
    pub word: Vec<StepDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub morphism: String,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoconeDoc {
    pub apex: Vec<String>,
    /// Per object, `[element, apex element]` pairs.
    pub legs: BTreeMap<String, Vec<[String; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub usc: bool,
    pub connected: bool,
    pub amalgamable_ap_jep: bool,
    pub amalgamable_ap_only: bool,
    pub evidence: EvidenceDoc,
    pub trace: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EvidenceDoc {
    Certificate {
        skeleton: PosetDoc,
        object_map: BTreeMap<String, String>,
        trees: Vec<TreeDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cocone_demo: Option<DemoDoc>,
    },
    NonPreorder {
        first: String,
        second: String,
        witness: DiagramDoc,
    },
    NonForest {
        skeleton: PosetDoc,
        object_map: BTreeMap<String, String>,
        region: Vec<String>,
        point: String,
        component: Vec<String>,
        upper_components: Vec<Vec<String>>,
        zigzag: Vec<String>,
        witness: DiagramDoc,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub point: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branches: Vec<BranchDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDoc {
    pub region: Vec<String>,
    pub upper: Vec<String>,
    pub tree: TreeDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemoDoc {
    pub diagram: DiagramDoc,
    pub cocone: CoconeDoc,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },
    #[error("at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("expected a {expected} document, found {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("invalid category: {0}")]
    Category(#[from] CategoryError),
    #[error("invalid poset: {0}")]
    Poset(#[from] PosetError),
    #[error("invalid diagram: {0}")]
    Diagram(#[from] DiagramError),
    #[error("invalid inverse category: {0}")]
    Inverse(#[from] InverseError),
    #[error("pseudoinverse map: {0}")]
    Pinv(String),
    #[error("cocone: {0}")]
    Cocone(String),
}

/// Syntax errors carry a line and column; schema errors carry the path of
/// the offending field.
pub fn parse(text: &str) -> Result<Document, FormatError> {
    let mut value: serde_json::Value = serde_json::from_str(text).map_err(|e| FormatError::Parse {
        message: strip_location(&e.to_string()),
        line: e.line(),
        column: e.column(),
    })?;
    let kind = value
        .as_object_mut()
        .and_then(|m| m.remove("kind"))
        .ok_or_else(|| schema(".", "expected an object with a `kind` field"))?;
    fn body<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, FormatError> {
        serde_path_to_error::deserialize(value).map_err(|e| schema(&e.path().to_string(), &e.inner().to_string()))
    }
    match kind.as_str() {
        Some("category") => body(value).map(Document::Category),
        Some("poset") => body(value).map(Document::Poset),
        Some("diagram") => body(value).map(Document::Diagram),
        Some("cocone") => body(value).map(Document::Cocone),
        Some("verdict") => body(value).map(Document::Verdict),
        _ => Err(schema("kind", &format!("unknown document kind {kind}"))),
    }
}

/// serde_json appends " at line L column C", which the error reports separately.
fn strip_location(message: &str) -> String {
    match message.rsplit_once(" at line ") {
        Some((head, _)) => head.to_string(),
        None => message.to_string(),
    }
}

fn schema(path: &str, message: &str) -> FormatError {
    FormatError::Schema {
        path: path.to_string(),
        message: message.to_string(),
    }
}

/// Indented JSON with a trailing newline. Arrays of scalars, arrays of such
/// arrays, and objects with scalar fields stay on one line.
pub fn render(doc: &Document) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &serde_json::Value) -> bool {
    !v.is_array() && !v.is_object()
}

fn one_line(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Array(items) => items
            .iter()
            .all(|i| is_scalar(i) || i.as_array().is_some_and(|a| a.iter().all(is_scalar))),
        other => is_scalar(other),
    }
}

fn write_value(out: &mut String, v: &serde_json::Value, indent: usize) {
    use serde_json::Value;
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) if one_line(v) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, item, indent);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) if map.values().all(is_scalar) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_value(out, item, indent);
            }
            out.push('}');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalar")),
    }
}

pub fn read_document(path: &Path) -> Result<Document, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text)
}

impl CategoryDoc {
    pub fn presentation(&self) -> CategoryPresentation {
        CategoryPresentation {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            compose: self.compose.clone(),
        }
    }
}

pub fn category_doc(c: &FinCategory) -> CategoryDoc {
    let p = c.to_presentation();
    CategoryDoc {
        objects: p.objects,
        morphisms: p.morphisms,
        compose: p.compose,
        pinv: None,
    }
}

pub fn inverse_category_doc(ic: &FinInverseCategory) -> CategoryDoc {
    let c = ic.base();
    let name = |f: usize| {
        if c.is_identity(f) {
            crate::fincat::identity_name(c.object_name(c.dom(f)))
        } else {
            c.name(f).to_string()
        }
    };
    let pinv = (0..c.morphism_count())
        .filter(|&f| !c.is_identity(f))
        .map(|f| (name(f), name(ic.pinv(f))))
        .collect();
    CategoryDoc {
        pinv: Some(pinv),
        ..category_doc(c)
    }
}

pub fn poset_doc(p: &FinPoset) -> PosetDoc {
    PosetDoc {
        elements: p.names().to_vec(),
        covers: p
            .hasse_edges()
            .into_iter()
            .map(|(a, b)| [p.name(a).to_string(), p.name(b).to_string()])
            .collect(),
    }
}

pub fn poset_from_doc(doc: &PosetDoc) -> Result<FinPoset, PosetError> {
    let covers: Vec<(String, String)> = doc.covers.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
    FinPoset::from_covers(doc.elements.clone(), &covers)
}

/// The shape described by a category or poset document.
pub fn shape_from_document(doc: &Document) -> Result<FinCategory, FormatError> {
    match doc {
        Document::Category(c) => Ok(validate_category(&c.presentation())?),
        Document::Poset(p) => Ok(poset_from_doc(p)?.to_category()),
        other => Err(FormatError::WrongKind {
            expected: "category or poset",
            found: other.kind(),
        }),
    }
}

/// Validates an inverse category document, checking `pinv` when present.
pub fn inverse_from_document(doc: &Document) -> Result<FinInverseCategory, FormatError> {
    let Document::Category(cd) = doc else {
        return Err(FormatError::WrongKind {
            expected: "category",
            found: doc.kind(),
        });
    };
    let c = validate_category(&cd.presentation())?;
    let Some(declared) = &cd.pinv else {
        return Ok(validate_inverse(&c)?);
    };
    let mut pinv: Vec<usize> = (0..c.morphism_count()).collect();
    for (f, g) in declared {
        let fi = c
            .morphism_index(f)
            .ok_or_else(|| FormatError::Pinv(format!("unknown morphism `{f}`")))?;
        let gi = c
            .morphism_index(g)
            .ok_or_else(|| FormatError::Pinv(format!("unknown morphism `{g}`")))?;
        pinv[fi] = gi;
    }
    Ok(FinInverseCategory::with_declared(&c, &pinv)?)
}

/// Resolves a shape reference; paths are relative to `base`.
pub fn resolve_shape(shape: &ShapeRef, base: &Path) -> Result<FinCategory, FormatError> {
    match shape {
        ShapeRef::Path(p) => shape_from_document(&read_document(&base.join(p))?),
        ShapeRef::Inline(doc) => shape_from_document(doc),
    }
}

pub fn diagram_from_doc(doc: &DiagramDoc, base: &Path) -> Result<FinInjDiagram, FormatError> {
    let shape = resolve_shape(&doc.shape, base)?;
    let raw = DiagramPresentation {
        carriers: doc.carriers.clone(),
        actions: doc.actions.clone(),
    };
    Ok(validate_diagram(shape, &raw)?)
}

/// Identity actions are left out.
pub fn diagram_doc(d: &FinInjDiagram, shape: ShapeRef) -> DiagramDoc {
    let p = d.to_presentation();
    let shape_cat = d.shape();
    let actions = p
        .actions
        .into_iter()
        .filter(|(name, _)| {
            let f = shape_cat.morphism_index(name).expect("own morphism");
            !shape_cat.is_identity(f)
        })
        .collect();
    DiagramDoc {
        shape,
        carriers: p.carriers,
        actions,
        collision: None,
    }
}

/// The shape inline, as a category document.
pub fn inline_shape(c: &FinCategory) -> ShapeRef {
    ShapeRef::Inline(Box::new(Document::Category(category_doc(c))))
}

pub fn collision_doc(d: &FinInjDiagram, c: &Collision) -> CollisionDoc {
    let shape = d.shape();
    let elem = |o: usize, x: usize| [shape.object_name(o).to_string(), d.carrier(o)[x].clone()];
    CollisionDoc {
        object: shape.object_name(c.object).into(),
        first: d.carrier(c.object)[c.first].clone(),
        second: d.carrier(c.object)[c.second].clone(),
        path: c.elements.iter().map(|&(o, x)| elem(o, x)).collect(),
        word: c
            .word
            .steps
            .iter()
            .map(|s| StepDoc {
                morphism: shape.name(s.morphism).into(),
                orientation: s.orientation,
            })
            .collect(),
    }
}

pub fn cocone_doc(d: &FinInjDiagram, cocone: &Cocone) -> CoconeDoc {
    let shape = d.shape();
    let legs = cocone
        .legs
        .iter()
        .enumerate()
        .map(|(o, leg)| {
            let pairs = leg
                .iter()
                .enumerate()
                .map(|(x, &y)| [d.carrier(o)[x].clone(), cocone.apex[y].clone()])
                .collect();
            (shape.object_name(o).to_string(), pairs)
        })
        .collect();
    CoconeDoc {
        apex: cocone.apex.clone(),
        legs,
    }
}

/// Resolves a cocone document against the diagram it is meant for. Leg
/// checks are left to [`Cocone::validate`].
pub fn cocone_from_doc(doc: &CoconeDoc, d: &FinInjDiagram) -> Result<Cocone, FormatError> {
    let bad = |m: String| FormatError::Cocone(m);
    let shape = d.shape();
    for o in doc.legs.keys() {
        if shape.object_index(o).is_none() {
            return Err(bad(format!("leg for unknown object `{o}`")));
        }
    }
    let mut legs = Vec::with_capacity(shape.object_count());
    for o in 0..shape.object_count() {
        let name = shape.object_name(o);
        let pairs = doc.legs.get(name).map(Vec::as_slice).unwrap_or_default();
        let mut leg = vec![None; d.carrier(o).len()];
        for [x, y] in pairs {
            let xi = d
                .carrier(o)
                .iter()
                .position(|e| e == x)
                .ok_or_else(|| bad(format!("`{x}` is not an element of `{name}`")))?;
            let yi = doc
                .apex
                .iter()
                .position(|e| e == y)
                .ok_or_else(|| bad(format!("`{y}` is not in the apex")))?;
            if leg[xi].replace(yi).is_some() {
                return Err(bad(format!("`{x}` of `{name}` is mapped twice")));
            }
        }
        let leg = leg
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| bad(format!("`{}` of `{name}` has no image", d.carrier(o)[x]))))
            .collect::<Result<Vec<_>, _>>()?;
        legs.push(leg);
    }
    Ok(Cocone {
        apex: doc.apex.clone(),
        legs,
    })
}

/// Witness diagram with its shape inlined and the collision attached.
pub fn witness_doc(d: &FinInjDiagram, c: &Collision) -> DiagramDoc {
    DiagramDoc {
        collision: Some(collision_doc(d, c)),
        ..diagram_doc(d, inline_shape(d.shape()))
    }
}

fn tree_doc(p: &FinPoset, t: &TreeNode) -> TreeDoc {
    let names = |s: &[usize]| s.iter().map(|&e| p.name(e).to_string()).collect();
    TreeDoc {
        point: p.name(t.point).into(),
        branches: t
            .branches
            .iter()
            .map(|b| BranchDoc {
                region: names(&b.region),
                upper: names(&b.upper),
                tree: tree_doc(p, &b.tree),
            })
            .collect(),
    }
}

fn object_map_doc(c: &FinCategory, p: &FinPoset, map: &[usize]) -> BTreeMap<String, String> {
    map.iter()
        .enumerate()
        .map(|(o, &e)| (c.object_name(o).to_string(), p.name(e).to_string()))
        .collect()
}

/// `shape` is the category the verdict was computed for.
pub fn verdict_doc(shape: &FinCategory, v: &Verdict) -> VerdictDoc {
    let evidence = match &v.evidence {
        Evidence::Certified {
            poset,
            object_map,
            certificate,
            demo,
        } => EvidenceDoc::Certificate {
            skeleton: poset_doc(poset),
            object_map: object_map_doc(shape, poset, object_map),
            trees: certificate.trees.iter().map(|t| tree_doc(poset, t)).collect(),
            cocone_demo: demo.as_ref().map(|CoconeDemo { diagram, cocone }| DemoDoc {
                diagram: diagram_doc(diagram, inline_shape(diagram.shape())),
                cocone: cocone_doc(diagram, cocone),
            }),
        },
        Evidence::Refuted(w) => {
            let witness = witness_doc(&w.diagram, &w.collision);
            match &w.kind {
                WitnessKind::NonPreorder {
                    first_name,
                    second_name,
                    ..
                } => EvidenceDoc::NonPreorder {
                    first: first_name.clone(),
                    second: second_name.clone(),
                    witness,
                },
                WitnessKind::NonForest {
                    poset,
                    object_map,
                    witness: nf,
                } => {
                    let names = |s: &[usize]| s.iter().map(|&e| poset.name(e).to_string()).collect();
                    EvidenceDoc::NonForest {
                        skeleton: poset_doc(poset),
                        object_map: object_map_doc(shape, poset, object_map),
                        region: names(&nf.region),
                        point: poset.name(nf.point).into(),
                        component: names(&nf.component),
                        upper_components: nf.upper_components.iter().map(|u| names(u)).collect(),
                        zigzag: names(&nf.zigzag),
                        witness,
                    }
                }
            }
        }
    };
    VerdictDoc {
        usc: v.usc,
        connected: v.connected,
        amalgamable_ap_jep: v.amalgamable_ap_jep,
        amalgamable_ap_only: v.amalgamable_ap_only,
        evidence,
        trace: v.trace.clone(),
    }
}

/// Partial actions of the representation in diagram-file style, shape
/// inlined with its pseudoinverses.
pub fn representation_doc(ic: &FinInverseCategory, wp: &WagnerPreston) -> DiagramDoc {
    let p = wp.to_presentation(ic.base());
    let c = ic.base();
    let actions = p
        .actions
        .into_iter()
        .filter(|(name, _)| !c.is_identity(c.morphism_index(name).expect("own morphism")))
        .collect();
    DiagramDoc {
        shape: ShapeRef::Inline(Box::new(Document::Category(inverse_category_doc(ic)))),
        carriers: p.carriers,
        actions,
        collision: None,
    }
}
