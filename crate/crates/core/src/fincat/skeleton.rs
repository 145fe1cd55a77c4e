use thiserror::Error;

use super::FinCategory;
use crate::poset::FinPoset;
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("category is not a preorder: `{0}` and `{1}` are parallel")]
pub struct NotAPreorder(pub String, pub String);

/// A preorder collapsed to a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub poset: FinPoset,
    /// Object index to poset element.
    pub object_map: Vec<usize>,
    /// Poset element to the least object of its class.
    pub representatives: Vec<usize>,
}

/// Quotients objects by mutual reachability. Elements are named after, and
/// ordered by, the least object index in their class.
pub fn skeleton_poset(cat: &FinCategory) -> Result<Skeleton, NotAPreorder> {
    if let Some((a, b)) = cat.first_parallel_pair() {
        return Err(NotAPreorder(cat.name(a).into(), cat.name(b).into()));
    }
    let n = cat.object_count();
    let mut reach = vec![false; n * n];
    for m in cat.morphisms() {
        reach[m.dom * n + m.cod] = true;
    }
    let mut uf = UnionFind::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if reach[a * n + b] && reach[b * n + a] {
                uf.union(a, b);
            }
        }
    }
    let (object_map, count) = uf.labels();
    let mut representatives = vec![usize::MAX; count];
    for (o, &c) in object_map.iter().enumerate() {
        if representatives[c] == usize::MAX {
            representatives[c] = o;
        }
    }
    let names = representatives
        .iter()
        .map(|&o| cat.object_name(o).to_string())
        .collect();
    let pairs: Vec<(usize, usize)> = cat
        .morphisms()
        .iter()
        .map(|m| (object_map[m.dom], object_map[m.cod]))
        .collect();
    let poset = FinPoset::from_relation(names, &pairs).expect("classes of a preorder are antisymmetric");
    Ok(Skeleton {
        poset,
        object_map,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fincat::{validate_category, CategoryPresentation, MorphismDecl};

    #[test]
    fn bowtie_skeleton() {
        let s = skeleton_poset(&corpus::bowtie()).unwrap();
        let p = &s.poset;
        assert_eq!(p.names(), ["A", "B", "C", "D"]);
        let (a, b, c, d) = (0, 1, 2, 3);
        assert!(p.leq(c, a) && p.leq(c, b) && p.leq(d, a) && p.leq(d, b));
        assert!(!p.leq(a, b) && !p.leq(c, d) && !p.leq(a, c));
        assert_eq!(s.object_map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn mutually_reachable_objects_collapse() {
        let raw = CategoryPresentation {
            objects: vec!["I".into(), "J".into()],
            morphisms: vec![
                MorphismDecl {
                    name: "s".into(),
                    dom: "I".into(),
                    cod: "J".into(),
                },
                MorphismDecl {
                    name: "t".into(),
                    dom: "J".into(),
                    cod: "I".into(),
                },
            ],
            compose: vec![
                ["t".into(), "s".into(), "id_I".into()],
                ["s".into(), "t".into(), "id_J".into()],
            ],
        };
        let c = validate_category(&raw).unwrap();
        let s = skeleton_poset(&c).unwrap();
        assert_eq!(s.poset.len(), 1);
        assert_eq!(s.object_map, vec![0, 0]);
        assert_eq!(s.representatives, vec![0]);
    }

    #[test]
    fn chain_is_its_own_skeleton() {
        let c = corpus::chain(3);
        let s = skeleton_poset(&c).unwrap();
        assert_eq!(s.poset, FinPoset::chain(3));
    }

    #[test]
    fn non_preorder_is_rejected() {
        assert!(skeleton_poset(&corpus::parallel_pair()).is_err());
    }
}
