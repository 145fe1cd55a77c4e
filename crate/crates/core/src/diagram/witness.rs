//! Concrete cocone-free diagrams for shapes that are not
//! upward-simply-connected, and shrinking them to the elements that matter.

use thiserror::Error;

use super::{has_cocone, CoconeCheck, Collision, FinInjDiagram};
use crate::fincat::{monic_reflection, skeleton_poset, FinCategory, MonicReflection, Skeleton};
use crate::poset::{is_forest_like, FinPoset, ForestDecision, NonForestWitness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessKind {
    /// The monic reflection has two distinct parallel morphisms
    /// `first, second: source -> target` (indices into the reflection).
    NonPreorder {
        source: usize,
        target: usize,
        first: usize,
        second: usize,
        first_name: String,
        second_name: String,
    },
    /// The skeleton of the monic reflection is not forest-like.
    NonForest {
        poset: FinPoset,
        object_map: Vec<usize>,
        witness: NonForestWitness,
    },
}

/// A diagram over the input shape, checked to have no cocone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoCoconeWitness {
    pub kind: WitnessKind,
    pub diagram: FinInjDiagram,
    pub collision: Collision,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("shape is upward-simply-connected; every diagram over it has a cocone")]
    NotApplicable,
    #[error("constructed diagram unexpectedly has a cocone")]
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("diagram has a cocone")]
pub struct HasCocone;

/// A finite diagram over `cat` with no cocone, when one exists.
pub fn witness_no_cocone(cat: &FinCategory) -> Result<NoCoconeWitness, WitnessError> {
    let reflection = monic_reflection(cat);
    if let Some((i, j)) = reflection.category.first_parallel_pair() {
        return non_preorder_witness(cat, &reflection, i, j);
    }
    let skeleton = skeleton_poset(&reflection.category).expect("checked preorder");
    match is_forest_like(&skeleton.poset) {
        ForestDecision::Forest(_) => Err(WitnessError::NotApplicable),
        ForestDecision::NotForest(w) => non_forest_witness(cat, &skeleton, w),
    }
}

/// Carriers are the hom-sets `Hom_M(A, -)` out of the common source `A` of
/// the parallel pair, acted on by post-composition along the projection.
/// `id_A` reaches both `i` and `j` in the carrier of their target.
pub(crate) fn non_preorder_witness(
    cat: &FinCategory,
    reflection: &MonicReflection,
    i: usize,
    j: usize,
) -> Result<NoCoconeWitness, WitnessError> {
    let m = &reflection.category;
    let source = m.dom(i);
    let homs: Vec<Vec<usize>> = (0..m.object_count()).map(|k| m.hom(source, k).collect()).collect();
    let carriers = homs
        .iter()
        .map(|h| h.iter().map(|&c| m.name(c).to_string()).collect())
        .collect();
    let actions = (0..cat.morphism_count())
        .map(|f| {
            let pf = reflection.projection.morphisms[f];
            let (from, to) = (cat.dom(f), cat.cod(f));
            homs[from]
                .iter()
                .map(|&c| {
                    let composite = m.compose(pf, c).expect("composable in the reflection");
                    homs[to].iter().position(|&t| t == composite).expect("hom-set closed")
                })
                .collect()
        })
        .collect();
    let diagram = FinInjDiagram::new(cat.clone(), carriers, actions)
        .expect("post-composition in a monic category is an injective functor");
    finish(
        WitnessKind::NonPreorder {
            source,
            target: m.cod(i),
            first: i,
            second: j,
            first_name: m.name(i).into(),
            second_name: m.name(j).into(),
        },
        diagram,
    )
}

/// On the skeleton: the failing point gets one element `*`; the offending
/// component and everything else above the point get `{0, 1}` with identity
/// maps; `*` goes to `0` in the first upper component and outside the
/// component, and to `1` in every other upper component. Everything else is
/// empty. The result is pulled back to `cat`.
pub(crate) fn non_forest_witness(
    cat: &FinCategory,
    skeleton: &Skeleton,
    witness: NonForestWitness,
) -> Result<NoCoconeWitness, WitnessError> {
    let p = &skeleton.poset;
    let x = witness.point;
    let two = |e: usize| e != x && (witness.component.contains(&e) || p.leq(x, e));
    let value = |e: usize| -> usize {
        let in_first = witness.upper_components[0].contains(&e);
        usize::from(witness.component.contains(&e) && !in_first)
    };
    let element_carrier = |e: usize| -> Vec<String> {
        if e == x {
            vec!["*".into()]
        } else if two(e) {
            vec!["0".into(), "1".into()]
        } else {
            Vec::new()
        }
    };
    let element_map = |a: usize, b: usize| -> Vec<usize> {
        if a == x && b == x {
            vec![0]
        } else if a == x {
            vec![value(b)]
        } else if two(a) {
            vec![0, 1]
        } else {
            Vec::new()
        }
    };
    let om = &skeleton.object_map;
    let carriers = (0..cat.object_count()).map(|o| element_carrier(om[o])).collect();
    let actions = (0..cat.morphism_count())
        .map(|f| element_map(om[cat.dom(f)], om[cat.cod(f)]))
        .collect();
    let diagram =
        FinInjDiagram::new(cat.clone(), carriers, actions).expect("case analysis yields a functor into injections");
    finish(
        WitnessKind::NonForest {
            poset: p.clone(),
            object_map: om.clone(),
            witness,
        },
        diagram,
    )
}

fn finish(kind: WitnessKind, diagram: FinInjDiagram) -> Result<NoCoconeWitness, WitnessError> {
    match has_cocone(&diagram) {
        CoconeCheck::Blocked(collision) => Ok(NoCoconeWitness {
            kind,
            diagram,
            collision,
        }),
        CoconeCheck::Exists(_) => Err(WitnessError::Unverified),
    }
}

/// Restricts every carrier to the images of the elements on the collision
/// path. The restriction is closed under the actions and still has no
/// cocone, which is re-checked.
pub fn shrink_witness(d: &FinInjDiagram) -> Result<FinInjDiagram, HasCocone> {
    let CoconeCheck::Blocked(collision) = has_cocone(d) else {
        return Err(HasCocone);
    };
    let shape = d.shape();
    let mut keep: Vec<Vec<bool>> = d.carriers().iter().map(|c| vec![false; c.len()]).collect();
    for &(o, x) in &collision.elements {
        for f in shape.morphisms_from(o) {
            keep[shape.cod(f)][d.apply(f, x)] = true;
        }
    }
    let new_index: Vec<Vec<Option<usize>>> = keep
        .iter()
        .map(|k| {
            let mut next = 0;
            k.iter()
                .map(|&b| {
                    b.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let carriers = (0..shape.object_count())
        .map(|o| {
            d.carrier(o)
                .iter()
                .zip(&keep[o])
                .filter(|(_, &k)| k)
                .map(|(e, _)| e.clone())
                .collect()
        })
        .collect();
    let actions = (0..shape.morphism_count())
        .map(|f| {
            let (i, j) = (shape.dom(f), shape.cod(f));
            (0..d.carrier(i).len())
                .filter(|&x| keep[i][x])
                .map(|x| new_index[j][d.apply(f, x)].expect("kept set is closed under actions"))
                .collect()
        })
        .collect();
    let shrunk = FinInjDiagram::new(shape.clone(), carriers, actions).expect("restriction of a diagram");
    if has_cocone(&shrunk).exists() {
        return Err(HasCocone);
    }
    Ok(shrunk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn bowtie_gets_non_forest_witness() {
        let c = corpus::bowtie();
        let w = witness_no_cocone(&c).unwrap();
        assert!(matches!(w.kind, WitnessKind::NonForest { .. }));
        let d = &w.diagram;
        let name = |o: usize| d.shape().object_name(o).to_string();
        assert_eq!(d.carrier(c.object_index("C").unwrap()), ["*"]);
        for o in ["A", "B", "D"] {
            assert_eq!(d.carrier(c.object_index(o).unwrap()), ["0", "1"]);
        }
        // 0_A ~ * ~ 1_B, and D's identity maps force 0_A ~ 1_A.
        assert_eq!(name(w.collision.object), "A");
        assert_eq!((w.collision.first, w.collision.second), (0, 1));
        assert!(!has_cocone(d).exists());
    }

    #[test]
    fn parallel_pair_gets_representable_witness() {
        let c = corpus::parallel_pair();
        let w = witness_no_cocone(&c).unwrap();
        let WitnessKind::NonPreorder {
            first_name,
            second_name,
            ..
        } = &w.kind
        else {
            panic!()
        };
        assert_eq!((first_name.as_str(), second_name.as_str()), ("u", "v"));
        let d = &w.diagram;
        assert_eq!(d.carrier(c.object_index("C").unwrap()), ["id_C"]);
        assert_eq!(d.carrier(c.object_index("B").unwrap()), ["u", "v"]);
        assert_eq!(w.collision.object, c.object_index("B").unwrap());
    }

    #[test]
    fn boat_witness_leaves_bottom_empty() {
        let c = corpus::boat();
        let w = witness_no_cocone(&c).unwrap();
        assert!(w.diagram.carrier(c.object_index("E").unwrap()).is_empty());
    }

    #[test]
    fn span_is_not_applicable() {
        assert_eq!(witness_no_cocone(&corpus::span()), Err(WitnessError::NotApplicable));
        assert_eq!(
            witness_no_cocone(&FinCategory::empty()),
            Err(WitnessError::NotApplicable)
        );
    }

    #[test]
    fn equalized_pair_is_fine_after_reflection() {
        // d∘u = d∘v forces u = v in the reflection, which is then a chain.
        assert_eq!(
            witness_no_cocone(&corpus::equalized_pair()),
            Err(WitnessError::NotApplicable)
        );
    }

    #[test]
    fn shrink_keeps_failure_and_drops_junk() {
        let w = witness_no_cocone(&corpus::bowtie()).unwrap();
        let s = shrink_witness(&w.diagram).unwrap();
        assert!(s.total_size() <= w.diagram.total_size());
        assert!(!has_cocone(&s).exists());

        let padded = corpus::padded_bowtie_diagram();
        let s = shrink_witness(&padded).unwrap();
        assert!(s.carriers().iter().flatten().all(|e| e != "junk"));
        assert!(!has_cocone(&s).exists());
    }

    #[test]
    fn shrink_rejects_diagram_with_cocone() {
        assert_eq!(shrink_witness(&corpus::chain_diagram()), Err(HasCocone));
    }
}
