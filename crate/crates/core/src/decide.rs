//! The decision pipeline: monic reflection, preorder test, skeleton,
//! forest-like decomposition, and verified evidence either way.

use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::{
    build_cocone_forest, non_forest_witness, non_preorder_witness, BuildError, Cocone, FinInjDiagram, NoCoconeWitness,
    WitnessError, WitnessKind,
};
use crate::fincat::{monic_reflection, skeleton_poset, FinCategory};
use crate::poset::{is_forest_like, FinPoset, ForestCertificate, ForestDecision, TreeNode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub usc: bool,
    pub connected: bool,
    pub amalgamable_ap_jep: bool,
    pub amalgamable_ap_only: bool,
    pub evidence: Evidence,
    pub trace: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// The skeleton of the monic reflection is forest-like.
    Certified {
        poset: FinPoset,
        object_map: Vec<usize>,
        certificate: ForestCertificate,
        demo: Option<CoconeDemo>,
    },
    /// A diagram over the input shape with no cocone.
    Refuted(NoCoconeWitness),
}

/// A diagram over the skeleton poset and the cocone built for it from the
/// certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoconeDemo {
    pub diagram: FinInjDiagram,
    pub cocone: Cocone,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("witness construction failed: {0}")]
    Witness(#[from] WitnessError),
    #[error("cocone construction failed: {0}")]
    Cocone(#[from] BuildError),
}

pub fn decide(cat: &FinCategory) -> Result<Verdict, DecideError> {
    let mut trace = Vec::new();
    let connected = cat.is_connected();
    trace.push(format!(
        "shape has {} objects, {} morphisms, {} connected component(s)",
        cat.object_count(),
        cat.morphism_count(),
        cat.connected_components().len()
    ));

    let reflection = monic_reflection(cat);
    trace.push(format!(
        "monic reflection has {} morphisms ({} identified)",
        reflection.category.morphism_count(),
        cat.morphism_count() - reflection.category.morphism_count()
    ));

    let (usc, evidence) = if let Some((i, j)) = reflection.category.first_parallel_pair() {
        trace.push(format!(
            "monic reflection is not a preorder: `{}` and `{}` are parallel",
            reflection.category.name(i),
            reflection.category.name(j)
        ));
        let w = non_preorder_witness(cat, &reflection, i, j)?;
        trace.push("built representable witness; oracle confirms no cocone".into());
        (false, Evidence::Refuted(w))
    } else {
        trace.push("monic reflection is a preorder".into());
        let skeleton = skeleton_poset(&reflection.category).expect("checked preorder");
        trace.push(format!("skeleton poset has {} elements", skeleton.poset.len()));
        match is_forest_like(&skeleton.poset) {
            ForestDecision::Forest(certificate) => {
                trace.push(format!(
                    "skeleton is forest-like with {} tree(s)",
                    certificate.trees.len()
                ));
                let demo = if skeleton.poset.is_empty() {
                    None
                } else {
                    let diagram = down_set_diagram(&skeleton.poset);
                    let cocone = build_cocone_forest(&diagram, &certificate)?;
                    trace.push(format!(
                        "built cocone over the down-set diagram; apex has {} elements",
                        cocone.apex.len()
                    ));
                    Some(CoconeDemo { diagram, cocone })
                };
                (
                    true,
                    Evidence::Certified {
                        poset: skeleton.poset,
                        object_map: skeleton.object_map,
                        certificate,
                        demo,
                    },
                )
            }
            ForestDecision::NotForest(w) => {
                trace.push(format!(
                    "skeleton is not forest-like: below `{}`, `{}` and `{}` are disconnected",
                    skeleton.poset.name(w.point),
                    skeleton.poset.name(w.u),
                    skeleton.poset.name(w.v)
                ));
                let nw = non_forest_witness(cat, &skeleton, w)?;
                trace.push("built two-valued witness; oracle confirms no cocone".into());
                (false, Evidence::Refuted(nw))
            }
        }
    };
    if cat.is_empty() {
        trace.push("empty shape: upward-simply-connected but not connected".into());
    }
    Ok(Verdict {
        usc,
        connected,
        amalgamable_ap_jep: usc,
        amalgamable_ap_only: usc && connected,
        evidence,
        trace,
    })
}

/// `F(J) = ↓J` with inclusions.
fn down_set_diagram(p: &FinPoset) -> FinInjDiagram {
    let shape = p.to_category();
    let down: Vec<Vec<usize>> = (0..p.len())
        .map(|j| (0..p.len()).filter(|&i| p.leq(i, j)).collect())
        .collect();
    let carriers = down
        .iter()
        .map(|d| d.iter().map(|&i| p.name(i).to_string()).collect())
        .collect();
    let actions = (0..shape.morphism_count())
        .map(|f| {
            let to = &down[shape.cod(f)];
            down[shape.dom(f)]
                .iter()
                .map(|i| to.iter().position(|k| k == i).expect("down-sets grow"))
                .collect()
        })
        .collect();
    FinInjDiagram::new(shape, carriers, actions).expect("inclusions form a functor")
}

/// Human-readable derivation of a verdict.
pub fn explain(v: &Verdict) -> String {
    let mut out = String::new();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "upward-simply-connected: {}", yes_no(v.usc)).unwrap();
    writeln!(out, "connected: {}", yes_no(v.connected)).unwrap();
    writeln!(out, "amalgamable with AP and JEP: {}", yes_no(v.amalgamable_ap_jep)).unwrap();
    writeln!(out, "amalgamable with AP alone: {}", yes_no(v.amalgamable_ap_only)).unwrap();
    writeln!(out, "\nsteps:").unwrap();
    for (i, step) in v.trace.iter().enumerate() {
        writeln!(out, "  {}. {step}", i + 1).unwrap();
    }
    writeln!(out, "\nevidence:").unwrap();
    match &v.evidence {
        Evidence::Certified {
            poset,
            certificate,
            demo,
            ..
        } => {
            if certificate.trees.is_empty() {
                writeln!(
                    out,
                    "  empty shape: every diagram is empty and has the empty cocone, but the \
                     empty shape is not connected, so AP alone does not suffice"
                )
                .unwrap();
            }
            for tree in &certificate.trees {
                narrate(&mut out, poset, tree, 1);
            }
            if let Some(d) = demo {
                writeln!(
                    out,
                    "  sample cocone over the down-set diagram: apex of {} elements",
                    d.cocone.apex.len()
                )
                .unwrap();
            }
        }
        Evidence::Refuted(w) => {
            match &w.kind {
                WitnessKind::NonPreorder {
                    first_name,
                    second_name,
                    ..
                } => writeln!(
                    out,
                    "  after the monic reflection, `{first_name}` and `{second_name}` remain distinct \
                     parallel morphisms; the hom-set diagram out of their domain identifies them"
                )
                .unwrap(),
                WitnessKind::NonForest { poset, witness, .. } => {
                    let names = |s: &[usize]| s.iter().map(|&e| poset.name(e)).collect::<Vec<_>>().join(", ");
                    writeln!(
                        out,
                        "  minimal element `{}` of region {{{}}}; its component {{{}}} meets the \
                         elements above it in disconnected parts:",
                        poset.name(witness.point),
                        names(&witness.region),
                        names(&witness.component)
                    )
                    .unwrap();
                    for part in &witness.upper_components {
                        writeln!(out, "    {{{}}}", names(part)).unwrap();
                    }
                    writeln!(
                        out,
                        "  joined in the component by the zigzag {}",
                        names(&witness.zigzag)
                    )
                    .unwrap();
                }
            }
            let d = &w.diagram;
            let c = &w.collision;
            let path: Vec<String> = c
                .elements
                .iter()
                .map(|&(o, x)| format!("{}:{}", d.shape().object_name(o), d.carrier(o)[x]))
                .collect();
            writeln!(
                out,
                "  witness diagram: elements `{}` and `{}` of `{}` meet in the colimit via {}",
                d.carrier(c.object)[c.first],
                d.carrier(c.object)[c.second],
                d.shape().object_name(c.object),
                path.join(" ~ ")
            )
            .unwrap();
        }
    }
    out
}

fn narrate(out: &mut String, p: &FinPoset, node: &TreeNode, depth: usize) {
    let pad = "  ".repeat(depth);
    if node.branches.is_empty() {
        writeln!(out, "{pad}`{}` on its own", p.name(node.point)).unwrap();
        return;
    }
    writeln!(out, "{pad}adjoin `{}` below:", p.name(node.point)).unwrap();
    for b in &node.branches {
        let upper: Vec<&str> = b.upper.iter().map(|&e| p.name(e)).collect();
        writeln!(out, "{pad}  {{{}}} in a branch built as:", upper.join(", ")).unwrap();
        narrate(out, p, &b.tree, depth + 2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::diagram::has_cocone;

    #[test]
    fn bowtie_is_not_amalgamable() {
        let v = decide(&corpus::bowtie()).unwrap();
        assert!(!v.usc && v.connected);
        assert!(!v.amalgamable_ap_jep && !v.amalgamable_ap_only);
        let Evidence::Refuted(w) = &v.evidence else { panic!() };
        assert!(!has_cocone(&w.diagram).exists());
        let text = explain(&v);
        assert!(text.contains("minimal element `C`"), "{text}");
        assert!(text.contains("{A}") && text.contains("{B}"), "{text}");
    }

    #[test]
    fn single_arrow_is_amalgamable() {
        let v = decide(&corpus::chain(2)).unwrap();
        assert!(v.usc && v.connected && v.amalgamable_ap_jep && v.amalgamable_ap_only);
        let Evidence::Certified { demo, .. } = &v.evidence else {
            panic!()
        };
        assert!(demo.is_some());
        assert!(explain(&v).contains("adjoin `x0` below"));
    }

    #[test]
    fn isolated_objects_need_jep() {
        let v = decide(&crate::poset::FinPoset::antichain(2).to_category()).unwrap();
        assert!(v.usc && !v.connected);
        assert!(v.amalgamable_ap_jep && !v.amalgamable_ap_only);
    }

    #[test]
    fn empty_shape_convention() {
        let v = decide(&FinCategory::empty()).unwrap();
        assert!(v.usc && !v.connected && v.amalgamable_ap_jep && !v.amalgamable_ap_only);
        assert!(explain(&v).contains("empty shape"));
    }

    #[test]
    fn parallel_pair_is_refuted_by_representable() {
        let v = decide(&corpus::parallel_pair()).unwrap();
        let Evidence::Refuted(w) = &v.evidence else { panic!() };
        assert!(matches!(w.kind, WitnessKind::NonPreorder { .. }));
    }

    #[test]
    fn equalized_pair_collapses_to_chain() {
        let v = decide(&corpus::equalized_pair()).unwrap();
        assert!(v.usc && v.connected);
    }

    #[test]
    fn decide_is_deterministic() {
        for c in [
            corpus::bowtie(),
            corpus::boat(),
            corpus::span(),
            corpus::cyclic_group(2),
        ] {
            assert_eq!(decide(&c), decide(&c));
        }
    }
}
