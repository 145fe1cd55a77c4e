//! Seeded random instances: posets, forest-like and non-forest-like posets,
//! diagrams over a shape, and closed zigzag words.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{FinInjDiagram, ZigzagStep, ZigzagWord};
use crate::fincat::{monic_reflection, FinCategory};
use crate::poset::{default_names, is_forest_like, FinPoset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn shuffled_labels(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Random poset on `n` elements: a random DAG on a random order, closed.
pub fn random_poset(n: usize, rng: &mut impl Rng) -> FinPoset {
    let density = rng.gen_range(0.15..0.6);
    let perm = shuffled_labels(n, rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    FinPoset::from_relation(default_names(n), &pairs).expect("edges follow a linear order")
}

/// Random forest-like poset on `n` elements, built by the adjoining rule
/// with each upper set of the form `↑y`.
pub fn random_forest(n: usize, rng: &mut impl Rng) -> FinPoset {
    let mut pairs = Vec::new();
    let mut next = 0;
    for size in random_composition(n, rng) {
        random_tree(size, &mut next, &mut pairs, rng);
    }
    let perm = shuffled_labels(n, rng);
    let pairs: Vec<_> = pairs.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    FinPoset::from_relation(default_names(n), &pairs).expect("adjoining rule yields a poset")
}

/// Random sizes summing to `n`, all positive.
fn random_composition(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        parts.push(s);
        left -= s;
    }
    parts
}

/// Builds a tree on `size` fresh elements; returns its elements and pushes
/// order pairs into `pairs`.
fn random_tree(size: usize, next: &mut usize, pairs: &mut Vec<(usize, usize)>, rng: &mut impl Rng) -> Vec<usize> {
    let point = *next;
    *next += 1;
    let mut elements = vec![point];
    for branch_size in random_composition(size - 1, rng) {
        let start = pairs.len();
        let branch = random_tree(branch_size, next, pairs, rng);
        let y = branch[rng.gen_range(0..branch.len())];
        let above: Vec<usize> = std::iter::once(y)
            .chain(pairs[start..].iter().filter(|&&(a, _)| a == y).map(|&(_, b)| b))
            .collect();
        for b in above {
            pairs.push((point, b));
        }
        elements.extend(branch);
    }
    elements
}

/// Random non-forest-like poset; needs `n >= 4`. Falls back to the bowtie
/// padded with isolated points if sampling keeps failing.
pub fn random_nonforest(n: usize, rng: &mut impl Rng) -> Option<FinPoset> {
    if n < 4 {
        return None;
    }
    for _ in 0..1000 {
        let p = random_poset(n, rng);
        if !is_forest_like(&p).is_forest() {
            return Some(p);
        }
    }
    let pairs = [(2, 0), (2, 1), (3, 0), (3, 1)];
    Some(FinPoset::from_relation(default_names(n), &pairs).unwrap())
}

/// Random diagram over a poset's category.
///
/// Objects are filled from the top down. `F(I)` is a random set of
/// compatible families over `↑I \ {I}` on which every projection is
/// injective; maximal elements get a random set of fresh elements.
pub fn random_poset_diagram(p: &FinPoset, max_carrier: usize, rng: &mut impl Rng) -> FinInjDiagram {
    let n = p.len();
    let shape = p.to_category();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| p.up(i).len());
    // maps[i][j][x]: image of element x of F(i) in F(j), for i <= j.
    let mut sizes = vec![0usize; n];
    let mut maps: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    for &i in &order {
        let above: Vec<usize> = p.up(i).into_iter().filter(|&j| j != i).collect();
        let chosen: Vec<Vec<usize>> = if above.is_empty() {
            let k = rng.gen_range(0..=max_carrier);
            (0..k).map(|_| Vec::new()).collect()
        } else {
            let mut families = compatible_families(p, &above, &sizes, &maps);
            families.shuffle(rng);
            let target = rng.gen_range(0..=max_carrier);
            let mut used: Vec<Vec<bool>> = above.iter().map(|&j| vec![false; sizes[j]]).collect();
            let mut chosen = Vec::new();
            for fam in families {
                if chosen.len() == target {
                    break;
                }
                if fam.iter().enumerate().all(|(k, &x)| !used[k][x]) {
                    for (k, &x) in fam.iter().enumerate() {
                        used[k][x] = true;
                    }
                    chosen.push(fam);
                }
            }
            chosen
        };
        sizes[i] = chosen.len();
        maps[i][i] = (0..sizes[i]).collect();
        for (k, &j) in above.iter().enumerate() {
            maps[i][j] = chosen.iter().map(|fam| fam[k]).collect();
        }
    }
    let carriers = (0..n)
        .map(|i| (0..sizes[i]).map(|x| format!("e{x}")).collect())
        .collect();
    let actions = (0..shape.morphism_count())
        .map(|f| maps[shape.dom(f)][shape.cod(f)].clone())
        .collect();
    FinInjDiagram::new(shape, carriers, actions).expect("compatible families give a functor")
}

/// Families `(x_j)` over `above` with `F(j <= k)(x_j) = x_k`.
fn compatible_families(p: &FinPoset, above: &[usize], sizes: &[usize], maps: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(above.len());
    fn extend(
        p: &FinPoset,
        above: &[usize],
        sizes: &[usize],
        maps: &[Vec<Vec<usize>>],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = current.len();
        if k == above.len() {
            out.push(current.clone());
            return;
        }
        let j = above[k];
        for x in 0..sizes[j] {
            let fits = (0..k).all(|l| {
                let i = above[l];
                (!p.leq(i, j) || maps[i][j][current[l]] == x) && (!p.leq(j, i) || maps[j][i][x] == current[l])
            });
            if fits {
                current.push(x);
                extend(p, above, sizes, maps, current, out);
                current.pop();
            }
        }
    }
    extend(p, above, sizes, maps, &mut current, &mut out);
    out
}

/// Random diagram over any shape: a sum of representables `Hom_M(A, -)` of
/// the monic reflection, pulled back, plus constant singletons.
pub fn random_diagram(shape: &FinCategory, rng: &mut impl Rng) -> FinInjDiagram {
    let r = monic_reflection(shape);
    let m = &r.category;
    let mut carriers: Vec<Vec<String>> = vec![Vec::new(); shape.object_count()];
    let mut actions: Vec<Vec<usize>> = vec![Vec::new(); shape.morphism_count()];
    let summands = if shape.is_empty() { 0 } else { rng.gen_range(0..=3) };
    for s in 0..summands {
        let a = rng.gen_range(0..m.object_count());
        let homs: Vec<Vec<usize>> = (0..m.object_count()).map(|k| m.hom(a, k).collect()).collect();
        let offsets: Vec<usize> = carriers.iter().map(Vec::len).collect();
        for (k, h) in homs.iter().enumerate() {
            carriers[k].extend(h.iter().map(|&g| format!("r{s}:{}", m.name(g))));
        }
        for (f, act) in actions.iter_mut().enumerate() {
            let pf = r.projection.morphisms[f];
            let (i, j) = (shape.dom(f), shape.cod(f));
            act.extend(homs[i].iter().map(|&g| {
                let fg = m.compose(pf, g).expect("composable");
                offsets[j] + homs[j].iter().position(|&h| h == fg).expect("hom-set closed")
            }));
        }
    }
    for s in 0..rng.gen_range(0..=2) {
        let offsets: Vec<usize> = carriers.iter().map(Vec::len).collect();
        for c in carriers.iter_mut() {
            c.push(format!("c{s}"));
        }
        for (f, act) in actions.iter_mut().enumerate() {
            act.push(offsets[shape.cod(f)]);
        }
    }
    FinInjDiagram::new(shape.clone(), carriers, actions).expect("representables are functors into injections")
}

/// Random closed word at `start`: a random walk of `len` steps through
/// non-identity morphisms, then the shortest way back.
pub fn random_closed_word(shape: &FinCategory, start: usize, len: usize, rng: &mut impl Rng) -> ZigzagWord {
    let edges: Vec<Vec<(usize, ZigzagStep)>> = (0..shape.object_count())
        .map(|o| {
            let mut out = Vec::new();
            for f in 0..shape.morphism_count() {
                if shape.is_identity(f) {
                    continue;
                }
                if shape.dom(f) == o {
                    out.push((shape.cod(f), ZigzagStep::forward(f)));
                }
                if shape.cod(f) == o {
                    out.push((shape.dom(f), ZigzagStep::backward(f)));
                }
            }
            out
        })
        .collect();
    let mut steps = Vec::new();
    let mut at = start;
    for _ in 0..len {
        let Some(&(next, step)) = edges[at].choose(rng) else {
            break;
        };
        steps.push(step);
        at = next;
    }
    let mut prev: Vec<Option<(usize, ZigzagStep)>> = vec![None; shape.object_count()];
    let mut seen = vec![false; shape.object_count()];
    seen[at] = true;
    let mut queue = VecDeque::from([at]);
    while let Some(o) = queue.pop_front() {
        for &(next, step) in &edges[o] {
            if !seen[next] {
                seen[next] = true;
                prev[next] = Some((o, step));
                queue.push_back(next);
            }
        }
    }
    let mut back = Vec::new();
    let mut cur = start;
    while let Some((o, step)) = prev[cur] {
        back.push(step);
        cur = o;
    }
    back.reverse();
    steps.extend(back);
    ZigzagWord { start, steps }
}
