//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls the library's own algorithms.

#![allow(dead_code)]

use std::collections::HashMap;

use amalgam::corpus;
use amalgam::fincat::{FinCategory, FunctorMap, Morphism};
use rand::Rng;

/// Every set partition of `0..n`, as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max {
            cur.push(l);
            go(i + 1, n, cur, max.max(l + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Parallel classes, closed under composition on both sides.
pub fn is_congruence(cat: &FinCategory, labels: &[usize]) -> bool {
    let m = cat.morphism_count();
    for f in 0..m {
        for g in 0..m {
            if labels[f] != labels[g] {
                continue;
            }
            if cat.dom(f) != cat.dom(g) || cat.cod(f) != cat.cod(g) {
                return false;
            }
            for h in 0..m {
                if let (Some(a), Some(b)) = (cat.compose(h, f), cat.compose(h, g)) {
                    if labels[a] != labels[b] {
                        return false;
                    }
                }
                if let (Some(a), Some(b)) = (cat.compose(f, h), cat.compose(g, h)) {
                    if labels[a] != labels[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Left cancellation in the quotient, phrased on representatives.
pub fn quotient_is_monic(cat: &FinCategory, labels: &[usize]) -> bool {
    let m = cat.morphism_count();
    for f in 0..m {
        for g in 0..m {
            for h in 0..m {
                if labels[g] == labels[h] || cat.dom(g) != cat.dom(h) || cat.cod(g) != cat.cod(h) {
                    continue;
                }
                if let (Some(a), Some(b)) = (cat.compose(f, g), cat.compose(f, h)) {
                    if labels[a] == labels[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Pairs related by a labelling, as a sorted list.
pub fn relation(labels: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..labels.len() {
        for b in a + 1..labels.len() {
            if labels[a] == labels[b] {
                out.push((a, b));
            }
        }
    }
    out
}

/// Intersection of all congruences satisfying `keep`, as a relation.
pub fn least_congruence_where(cat: &FinCategory, keep: impl Fn(&[usize]) -> bool) -> Option<Vec<(usize, usize)>> {
    let mut meet: Option<Vec<(usize, usize)>> = None;
    for p in partitions(cat.morphism_count()) {
        if !is_congruence(cat, &p) || !keep(&p) {
            continue;
        }
        let r = relation(&p);
        meet = Some(match meet {
            None => r,
            Some(prev) => prev.into_iter().filter(|x| r.contains(x)).collect(),
        });
    }
    meet
}

/// Labelling generated by a relation on `0..n`.
pub fn labels_of(n: usize, rel: &[(usize, usize)]) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..n).collect();
    for &(a, b) in rel {
        let (lo, hi) = (labels[a].min(labels[b]), labels[a].max(labels[b]));
        for x in labels.iter_mut() {
            if *x == hi {
                *x = lo;
            }
        }
    }
    labels
}

/// Every functor `src → tgt`, by backtracking over object and morphism images.
pub fn functors(src: &FinCategory, tgt: &FinCategory) -> Vec<FunctorMap> {
    let mut out = Vec::new();
    let no = src.object_count();
    let mut objects = vec![0; no];
    enumerate_objects(src, tgt, 0, &mut objects, &mut out);
    out
}

fn enumerate_objects(
    src: &FinCategory,
    tgt: &FinCategory,
    i: usize,
    objects: &mut Vec<usize>,
    out: &mut Vec<FunctorMap>,
) {
    if i == objects.len() {
        let mut morphisms = vec![usize::MAX; src.morphism_count()];
        enumerate_morphisms(src, tgt, 0, objects, &mut morphisms, out);
        return;
    }
    for o in 0..tgt.object_count() {
        objects[i] = o;
        enumerate_objects(src, tgt, i + 1, objects, out);
    }
}

fn enumerate_morphisms(
    src: &FinCategory,
    tgt: &FinCategory,
    f: usize,
    objects: &[usize],
    morphisms: &mut Vec<usize>,
    out: &mut Vec<FunctorMap>,
) {
    if f == morphisms.len() {
        out.push(FunctorMap {
            objects: objects.to_vec(),
            morphisms: morphisms.clone(),
        });
        return;
    }
    let (a, b) = (objects[src.dom(f)], objects[src.cod(f)]);
    let candidates: Vec<usize> = if src.is_identity(f) {
        vec![tgt.identity(a)]
    } else {
        (0..tgt.morphism_count())
            .filter(|&t| tgt.dom(t) == a && tgt.cod(t) == b)
            .collect()
    };
    'next: for t in candidates {
        morphisms[f] = t;
        for g in 0..=f {
            for h in 0..=f {
                if let Some(gh) = src.compose(g, h) {
                    if gh <= f
                        && (g == f || h == f || gh == f)
                        && tgt.compose(morphisms[g], morphisms[h]) != Some(morphisms[gh])
                    {
                        continue 'next;
                    }
                }
            }
        }
        enumerate_morphisms(src, tgt, f + 1, objects, morphisms, out);
    }
    morphisms[f] = usize::MAX;
}

/// A category of functions between small sets, generated by random maps.
pub fn random_concrete_category(rng: &mut impl Rng, max_morphisms: usize) -> FinCategory {
    loop {
        let n = rng.gen_range(1..=3);
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let mut maps: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|o| (o, o, (0..sizes[o]).collect())).collect();
        for _ in 0..rng.gen_range(1..=3) {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let map = (0..sizes[a]).map(|_| rng.gen_range(0..sizes[b])).collect();
            maps.push((a, b, map));
        }
        let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
        let mut all = Vec::new();
        for m in maps {
            if !index.contains_key(&m) {
                index.insert(m.clone(), all.len());
                all.push(m);
            }
        }
        let mut i = 0;
        let mut too_big = false;
        while i < all.len() && !too_big {
            for j in 0..all.len() {
                for (f, g) in [(i, j), (j, i)] {
                    let (fa, fb, fm) = all[f].clone();
                    let (ga, gb, gm) = all[g].clone();
                    if fb != ga {
                        continue;
                    }
                    let composite = (fa, gb, fm.iter().map(|&x| gm[x]).collect::<Vec<_>>());
                    if !index.contains_key(&composite) {
                        index.insert(composite.clone(), all.len());
                        all.push(composite);
                    }
                }
            }
            too_big = all.len() > max_morphisms;
            i += 1;
        }
        if too_big {
            continue;
        }
        let objects = (0..n).map(|o| format!("S{o}")).collect();
        let morphisms = all
            .iter()
            .enumerate()
            .map(|(k, (a, b, _))| Morphism {
                name: if k < n { format!("id_S{k}") } else { format!("m{k}") },
                dom: *a,
                cod: *b,
            })
            .collect();
        let table = |g: usize, f: usize| {
            let (fa, fb, fm) = &all[f];
            let (ga, gb, gm) = &all[g];
            (fb == ga).then(|| index[&(*fa, *gb, fm.iter().map(|&x| gm[x]).collect::<Vec<_>>())])
        };
        return FinCategory::from_parts(objects, morphisms, (0..n).collect(), table).expect("functions compose");
    }
}

/// Named categories with at most `max` morphisms: the corpus plus seeded
/// concrete categories.
pub fn small_categories(max: usize, random: usize, seed: u64) -> Vec<(String, FinCategory)> {
    let mut out: Vec<(String, FinCategory)> = Vec::new();
    let mut fixed: Vec<(String, FinCategory)> = corpus::shapes().into_iter().map(|(n, c)| (n.to_string(), c)).collect();
    fixed.extend(
        corpus::inverse_categories()
            .into_iter()
            .map(|(n, c)| (n.to_string(), c)),
    );
    fixed.extend(
        corpus::posets()
            .into_iter()
            .map(|(n, p)| (format!("{n}_poset"), p.to_category())),
    );
    for extra in [
        corpus::nilpotent_monoid(),
        corpus::left_zero_monoid(),
        corpus::parallel_then_two(),
        corpus::cyclic_group(4),
    ] {
        fixed.push((format!("extra{}", fixed.len()), extra));
    }
    out.extend(fixed.into_iter().filter(|(_, c)| c.morphism_count() <= max));
    let mut rng = amalgam::gen::rng(seed);
    for k in 0..random {
        out.push((format!("concrete{k}"), random_concrete_category(&mut rng, max)));
    }
    out
}
