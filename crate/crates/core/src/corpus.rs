//! Named shapes, diagrams and inverse categories used as fixtures and shipped
//! as JSON files under `corpus/`.

use std::collections::BTreeMap;

use crate::diagram::FinInjDiagram;
use crate::fincat::{validate_category, CategoryPresentation, FinCategory, Morphism, MorphismDecl};
use crate::format::{self, Document, ShapeRef};
use crate::poset::FinPoset;

fn category(objects: &[&str], morphisms: &[(&str, &str, &str)], compose: &[[&str; 3]]) -> FinCategory {
    let raw = CategoryPresentation {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms: morphisms
            .iter()
            .map(|&(name, dom, cod)| MorphismDecl {
                name: name.into(),
                dom: dom.into(),
                cod: cod.into(),
            })
            .collect(),
        compose: compose.iter().map(|t| t.map(String::from)).collect(),
    };
    validate_category(&raw).expect("corpus category is valid")
}

fn poset(names: &[&str], covers: &[(&str, &str)]) -> FinPoset {
    let covers: Vec<(String, String)> = covers.iter().map(|&(a, b)| (a.into(), b.into())).collect();
    FinPoset::from_covers(names.iter().map(|s| s.to_string()).collect(), &covers).expect("corpus poset is valid")
}

/// One-object category from a multiplication table on `0..names.len()`,
/// where element 0 is the identity.
fn monoid(names: &[String], mul: impl Fn(usize, usize) -> usize) -> FinCategory {
    let morphisms = names
        .iter()
        .map(|n| Morphism {
            name: n.clone(),
            dom: 0,
            cod: 0,
        })
        .collect();
    FinCategory::from_parts(vec!["X".into()], morphisms, vec![0], |g, f| Some(mul(g, f)))
        .expect("corpus monoid is valid")
}

pub fn bowtie() -> FinCategory {
    category(
        &["A", "B", "C", "D"],
        &[("f", "C", "A"), ("h", "C", "B"), ("g", "D", "A"), ("k", "D", "B")],
        &[],
    )
}

pub fn bowtie_poset() -> FinPoset {
    poset(&["A", "B", "C", "D"], &[("C", "A"), ("C", "B"), ("D", "A"), ("D", "B")])
}

/// The bowtie with a bottom `E` below `C` and `D`.
pub fn boat() -> FinCategory {
    category(
        &["A", "B", "C", "D", "E"],
        &[
            ("f", "C", "A"),
            ("h", "C", "B"),
            ("g", "D", "A"),
            ("k", "D", "B"),
            ("u", "E", "C"),
            ("v", "E", "D"),
            ("fu", "E", "A"),
            ("hu", "E", "B"),
        ],
        &[["f", "u", "fu"], ["g", "v", "fu"], ["h", "u", "hu"], ["k", "v", "hu"]],
    )
}

pub fn boat_poset() -> FinPoset {
    poset(
        &["A", "B", "C", "D", "E"],
        &[("C", "A"), ("C", "B"), ("D", "A"), ("D", "B"), ("E", "C"), ("E", "D")],
    )
}

/// `a <- p -> b`.
pub fn span_poset() -> FinPoset {
    poset(&["p", "a", "b"], &[("p", "a"), ("p", "b")])
}

pub fn span() -> FinCategory {
    span_poset().to_category()
}

/// `a -> t <- b`.
pub fn cospan_poset() -> FinPoset {
    poset(&["a", "b", "t"], &[("a", "t"), ("b", "t")])
}

/// `x0 < x1 < ... < x(n-1)` as a category.
pub fn chain(n: usize) -> FinCategory {
    FinPoset::chain(n).to_category()
}

/// One bottom `r` below `n` pairwise incomparable points.
pub fn fan_out(n: usize) -> FinPoset {
    let mut names = vec!["r".to_string()];
    names.extend((0..n).map(|i| format!("l{i}")));
    let pairs: Vec<_> = (1..=n).map(|i| (0, i)).collect();
    FinPoset::from_relation(names, &pairs).unwrap()
}

/// `n` pairwise incomparable points below one top `t`.
pub fn fan_in(n: usize) -> FinPoset {
    let mut names: Vec<String> = (0..n).map(|i| format!("l{i}")).collect();
    names.push("t".into());
    let pairs: Vec<_> = (0..n).map(|i| (i, n)).collect();
    FinPoset::from_relation(names, &pairs).unwrap()
}

/// Three bottoms and three tops, each bottom below two adjacent tops.
pub fn crown() -> FinPoset {
    poset(
        &["t0", "t1", "t2", "b0", "b1", "b2"],
        &[
            ("b0", "t0"),
            ("b0", "t1"),
            ("b1", "t1"),
            ("b1", "t2"),
            ("b2", "t2"),
            ("b2", "t0"),
        ],
    )
}

/// `u, v: C -> B` with nothing else.
pub fn parallel_pair() -> FinCategory {
    category(&["C", "B"], &[("u", "C", "B"), ("v", "C", "B")], &[])
}

/// `u, v: C -> B` and `d: B -> D` with `d∘u = d∘v = w`.
pub fn equalized_pair() -> FinCategory {
    category(
        &["C", "B", "D"],
        &[("u", "C", "B"), ("v", "C", "B"), ("d", "B", "D"), ("w", "C", "D")],
        &[["d", "u", "w"], ["d", "v", "w"]],
    )
}

/// `u, v: C -> B` and `w: B -> D` with `w∘u != w∘v`.
pub fn parallel_then_two() -> FinCategory {
    category(
        &["C", "B", "D"],
        &[
            ("u", "C", "B"),
            ("v", "C", "B"),
            ("w", "B", "D"),
            ("wu", "C", "D"),
            ("wv", "C", "D"),
        ],
        &[["w", "u", "wu"], ["w", "v", "wv"]],
    )
}

/// `{1, z, c}` with every product of non-identities equal to `c`.
pub fn nilpotent_monoid() -> FinCategory {
    let names = ["id_X", "z", "c"].map(String::from);
    monoid(&names, |g, f| match (g, f) {
        (0, x) | (x, 0) => x,
        _ => 2,
    })
}

/// `{1, a, b}` with `x∘y = x` for `x, y ∈ {a, b}`.
pub fn left_zero_monoid() -> FinCategory {
    let names = ["id_X", "a", "b"].map(String::from);
    monoid(&names, |g, f| if g == 0 { f } else { g })
}

/// `Z/n` on one object `X`; `g{k}` is the `k`-th power of the generator.
pub fn cyclic_group(n: usize) -> FinCategory {
    let mut names = vec!["id_X".to_string()];
    names.extend((1..n).map(|k| format!("g{k}")));
    monoid(&names, |g, f| (g + f) % n)
}

/// Partial injections of `0..points` closed under composition from
/// `generators`, plus the identity, as a one-object category. Elements are
/// named by their image string, `-` marking undefined points.
pub fn partial_injection_monoid(points: usize, generators: &[Vec<Option<usize>>]) -> FinCategory {
    let identity: Vec<Option<usize>> = (0..points).map(Some).collect();
    let mut elements = vec![identity];
    let mut frontier: Vec<Vec<Option<usize>>> = generators.to_vec();
    while let Some(m) = frontier.pop() {
        if elements.contains(&m) {
            continue;
        }
        elements.push(m);
        for a in elements.clone() {
            let last = elements.last().unwrap().clone();
            frontier.push(after(&a, &last));
            frontier.push(after(&last, &a));
        }
    }
    let names: Vec<String> = elements
        .iter()
        .enumerate()
        .map(|(i, m)| {
            if i == 0 {
                "id_X".to_string()
            } else {
                let image: String = m
                    .iter()
                    .map(|y| y.map_or('-', |y| char::from_digit(y as u32, 36).unwrap()))
                    .collect();
                format!("m{image}")
            }
        })
        .collect();
    monoid(&names, |g, f| {
        let gf = after(&elements[g], &elements[f]);
        elements
            .iter()
            .position(|e| *e == gf)
            .expect("closed under composition")
    })
}

/// `g ∘ f` of partial maps.
fn after(g: &[Option<usize>], f: &[Option<usize>]) -> Vec<Option<usize>> {
    f.iter().map(|x| x.and_then(|x| g[x])).collect()
}

/// All partial injections of a 2-element set.
pub fn symmetric_inverse_monoid_2() -> FinCategory {
    partial_injection_monoid(2, &[vec![Some(1), Some(0)], vec![Some(0), None], vec![Some(1), None]])
}

/// `{1, 0}`: the identity and the empty map on one point.
pub fn identity_and_empty() -> FinCategory {
    partial_injection_monoid(1, &[vec![None]])
}

/// The five-element Brandt semigroup with an identity adjoined.
pub fn brandt_monoid() -> FinCategory {
    partial_injection_monoid(2, &[vec![None, Some(0)], vec![Some(1), None]])
}

pub fn symmetric_group_3() -> FinCategory {
    partial_injection_monoid(3, &[vec![Some(1), Some(0), Some(2)], vec![Some(1), Some(2), Some(0)]])
}

pub fn klein_four() -> FinCategory {
    partial_injection_monoid(
        4,
        &[
            vec![Some(1), Some(0), Some(3), Some(2)],
            vec![Some(2), Some(3), Some(0), Some(1)],
        ],
    )
}

/// Two objects and an isomorphism `a: X -> Y` with inverse `b`.
pub fn iso_groupoid() -> FinCategory {
    category(
        &["X", "Y"],
        &[("a", "X", "Y"), ("b", "Y", "X")],
        &[["b", "a", "id_X"], ["a", "b", "id_Y"]],
    )
}

/// Every partial injection between sets of the given sizes.
pub fn partial_injections(sizes: &[usize]) -> FinCategory {
    let objects: Vec<String> = sizes.iter().map(|s| format!("S{s}")).collect();
    let mut objects_named = objects.clone();
    for (i, name) in objects_named.iter_mut().enumerate() {
        if objects[..i].contains(name) {
            *name = format!("{name}_{i}");
        }
    }
    let mut morphisms = Vec::new();
    let mut maps = Vec::new();
    for (a, &sa) in sizes.iter().enumerate() {
        for (b, &sb) in sizes.iter().enumerate() {
            for m in all_partial_injections(sa, sb) {
                let image: String = m
                    .iter()
                    .map(|y| y.map_or('-', |y| char::from_digit(y as u32, 36).unwrap()))
                    .collect();
                let name = if a == b && m.iter().enumerate().all(|(x, &y)| y == Some(x)) {
                    crate::fincat::identity_name(&objects_named[a])
                } else {
                    format!("{}>{}:{image}", objects_named[a], objects_named[b])
                };
                morphisms.push(Morphism { name, dom: a, cod: b });
                maps.push(m);
            }
        }
    }
    let identity = (0..sizes.len())
        .map(|o| {
            (0..morphisms.len())
                .find(|&f| {
                    morphisms[f].dom == o
                        && morphisms[f].cod == o
                        && maps[f].iter().enumerate().all(|(x, &y)| y == Some(x))
                })
                .unwrap()
        })
        .collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.dom, m.cod)).collect();
    FinCategory::from_parts(objects_named, morphisms, identity, |g, f| {
        if ends[f].1 != ends[g].0 {
            return None;
        }
        let gf = after(&maps[g], &maps[f]);
        (0..maps.len()).find(|&r| ends[r] == (ends[f].0, ends[g].1) && maps[r] == gf)
    })
    .expect("partial injections form a category")
}

fn all_partial_injections(from: usize, to: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    let mut current = vec![None; from];
    fn extend(
        x: usize,
        to: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        if x == cur.len() {
            out.push(cur.clone());
            return;
        }
        cur[x] = None;
        extend(x + 1, to, used, cur, out);
        for y in 0..to {
            if !used[y] {
                used[y] = true;
                cur[x] = Some(y);
                extend(x + 1, to, used, cur, out);
                used[y] = false;
            }
        }
        cur[x] = None;
    }
    extend(0, to, &mut vec![false; to], &mut current, &mut out);
    out
}

/// Named inverse categories, all with at most 12 morphisms.
pub fn inverse_categories() -> Vec<(&'static str, FinCategory)> {
    vec![
        ("z2", cyclic_group(2)),
        ("z3", cyclic_group(3)),
        ("s3", symmetric_group_3()),
        ("klein", klein_four()),
        ("identity_and_empty", identity_and_empty()),
        ("symmetric_inverse_2", symmetric_inverse_monoid_2()),
        ("brandt", brandt_monoid()),
        ("iso_groupoid", iso_groupoid()),
        ("pinj_0_1", partial_injections(&[0, 1])),
        ("pinj_1_1", partial_injections(&[1, 1])),
    ]
}

fn labels(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn diagram(shape: FinCategory, carriers: &[(&str, &[&str])], actions: &[(&str, &[usize])]) -> FinInjDiagram {
    let mut carrier_map: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for &(o, elems) in carriers {
        carrier_map.insert(o, labels(elems));
    }
    let carriers: Vec<Vec<String>> = shape
        .objects()
        .iter()
        .map(|o| carrier_map[o.as_str()].clone())
        .collect();
    let action_map: BTreeMap<&str, &[usize]> = actions.iter().copied().collect();
    let actions = (0..shape.morphism_count())
        .map(|f| match action_map.get(shape.name(f)) {
            Some(m) => m.to_vec(),
            None if shape.is_identity(f) => (0..carriers[shape.dom(f)].len()).collect(),
            None => panic!("corpus diagram misses `{}`", shape.name(f)),
        })
        .collect();
    FinInjDiagram::new(shape, carriers, actions).expect("corpus diagram is valid")
}

/// Bowtie with `A = C = D = {*}`, `B = {0, 1}`, `h(*) = h_val`, `k(*) = k_val`.
pub fn bowtie_diagram_with(h_val: usize, k_val: usize) -> FinInjDiagram {
    diagram(
        bowtie(),
        &[("A", &["*"]), ("B", &["0", "1"]), ("C", &["*"]), ("D", &["*"])],
        &[("f", &[0]), ("h", &[h_val]), ("g", &[0]), ("k", &[k_val])],
    )
}

pub fn concrete_bowtie_diagram() -> FinInjDiagram {
    bowtie_diagram_with(0, 1)
}

/// The concrete bowtie diagram with unreachable extra elements in `A` and `B`.
pub fn padded_bowtie_diagram() -> FinInjDiagram {
    diagram(
        bowtie(),
        &[
            ("A", &["*", "junk"]),
            ("B", &["0", "1", "junk"]),
            ("C", &["*"]),
            ("D", &["*"]),
        ],
        &[("f", &[0]), ("h", &[0]), ("g", &[0]), ("k", &[1])],
    )
}

/// The concrete bowtie diagram extended by `E = ∅`.
pub fn boat_diagram() -> FinInjDiagram {
    diagram(
        boat(),
        &[
            ("A", &["*"]),
            ("B", &["0", "1"]),
            ("C", &["*"]),
            ("D", &["*"]),
            ("E", &[]),
        ],
        &[
            ("f", &[0]),
            ("h", &[0]),
            ("g", &[0]),
            ("k", &[1]),
            ("u", &[]),
            ("v", &[]),
            ("fu", &[]),
            ("hu", &[]),
        ],
    )
}

/// `{a} -> {a, b} -> {a, b, c}` over `chain(3)`.
pub fn chain_diagram() -> FinInjDiagram {
    diagram(
        chain(3),
        &[("x0", &["a"]), ("x1", &["a", "b"]), ("x2", &["a", "b", "c"])],
        &[("x0->x1", &[1]), ("x1->x2", &[2, 0]), ("x0->x2", &[0])],
    )
}

/// Inclusions of `{a}` into `{a, b}` and `{a, c}`.
pub fn span_diagram() -> FinInjDiagram {
    diagram(
        span(),
        &[("p", &["a"]), ("a", &["a", "b"]), ("b", &["a", "c"])],
        &[("p->a", &[0]), ("p->b", &[0])],
    )
}

/// Every shape shipped in `corpus/`, by file stem.
pub fn shapes() -> Vec<(&'static str, FinCategory)> {
    vec![
        ("bowtie", bowtie()),
        ("boat", boat()),
        ("span", span()),
        ("parallel_pair", parallel_pair()),
        ("equalized_pair", equalized_pair()),
    ]
}

/// Every poset shipped in `corpus/`, by file stem.
pub fn posets() -> Vec<(&'static str, FinPoset)> {
    vec![
        ("bowtie_poset", bowtie_poset()),
        ("boat_poset", boat_poset()),
        ("span_poset", span_poset()),
        ("cospan", cospan_poset()),
        ("chain2", FinPoset::chain(2)),
        ("chain3", FinPoset::chain(3)),
        ("chain4", FinPoset::chain(4)),
        ("fan_out3", fan_out(3)),
        ("fan_in3", fan_in(3)),
        ("crown", crown()),
    ]
}

/// Every diagram shipped in `corpus/`, by file stem, with the stem of its
/// shape file.
pub fn diagrams() -> Vec<(&'static str, &'static str, FinInjDiagram)> {
    vec![
        ("bowtie_concrete", "bowtie", concrete_bowtie_diagram()),
        ("boat_concrete", "boat", boat_diagram()),
        ("span_inclusions", "span", span_diagram()),
        ("chain_inclusions", "chain3", chain_diagram()),
    ]
}

/// Every corpus file as `(relative path, document)`.
pub fn documents() -> Vec<(String, Document)> {
    let mut out = Vec::new();
    for (name, c) in shapes() {
        out.push((format!("{name}.json"), Document::Category(format::category_doc(&c))));
    }
    for (name, p) in posets() {
        out.push((format!("{name}.json"), Document::Poset(format::poset_doc(&p))));
    }
    for (name, shape, d) in diagrams() {
        let doc = format::diagram_doc(&d, ShapeRef::Path(format!("{shape}.json")));
        out.push((format!("{name}.json"), Document::Diagram(doc)));
    }
    for (name, c) in inverse_categories() {
        let ic = crate::invcat::validate_inverse(&c).expect("corpus inverse category");
        out.push((
            format!("inverse/{name}.json"),
            Document::Category(format::inverse_category_doc(&ic)),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_corpus_sizes() {
        let sizes: Vec<(&str, usize)> = inverse_categories()
            .iter()
            .map(|(n, c)| (*n, c.morphism_count()))
            .collect();
        assert_eq!(
            sizes,
            vec![
                ("z2", 2),
                ("z3", 3),
                ("s3", 6),
                ("klein", 4),
                ("identity_and_empty", 2),
                ("symmetric_inverse_2", 7),
                ("brandt", 6),
                ("iso_groupoid", 4),
                ("pinj_0_1", 5),
                ("pinj_1_1", 8),
            ]
        );
    }

    #[test]
    fn crown_and_fans() {
        use crate::poset::is_forest_like;
        assert!(!is_forest_like(&crown()).is_forest());
        assert!(is_forest_like(&fan_out(3)).is_forest());
        assert!(is_forest_like(&fan_in(3)).is_forest());
        assert!(is_forest_like(&cospan_poset()).is_forest());
    }

    #[test]
    fn boat_diagram_has_empty_bottom() {
        let d = boat_diagram();
        assert!(d.carrier(4).is_empty());
    }
}
