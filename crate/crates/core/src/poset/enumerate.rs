//! Exhaustive enumeration of small posets up to isomorphism.

use std::collections::HashSet;

use super::{default_names, FinPoset};

/// Canonical strict-order matrix: the lexicographically least one over all
/// relabellings that keep elements sorted by (down-set size, up-set size).
pub fn canonical_form(p: &FinPoset) -> Vec<bool> {
    let n = p.len();
    let key = |a: usize| {
        let down = (0..n).filter(|&b| p.leq(b, a)).count();
        let up = (0..n).filter(|&b| p.leq(a, b)).count();
        (down, up)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| key(a));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &a in &order {
        match blocks.last_mut() {
            Some(b) if key(b[0]) == key(a) => b.push(a),
            _ => blocks.push(vec![a]),
        }
    }
    let mut best: Option<Vec<bool>> = None;
    let mut current = Vec::with_capacity(n);
    permute_blocks(&blocks, 0, &mut current, &mut |seq| {
        let m: Vec<bool> = seq.iter().flat_map(|&a| seq.iter().map(move |&b| p.lt(a, b))).collect();
        if best.as_ref().is_none_or(|b| m < *b) {
            best = Some(m);
        }
    });
    best.unwrap_or_default()
}

fn permute_blocks(blocks: &[Vec<usize>], idx: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if idx == blocks.len() {
        visit(current);
        return;
    }
    let mut block = blocks[idx].clone();
    heap_permutations(&mut block, &mut |perm| {
        let len = current.len();
        current.extend_from_slice(perm);
        permute_blocks(blocks, idx + 1, current, visit);
        current.truncate(len);
    });
}

fn heap_permutations(items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            visit(items);
            return;
        }
        for i in 0..k {
            go(k - 1, items, visit);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let k = items.len();
    go(k, items, visit);
}

/// One representative of every isomorphism class of posets on `n` elements,
/// built by adding a maximal element on top of every down-closed subset of
/// each smaller representative.
pub fn posets_up_to_iso(n: usize) -> Vec<FinPoset> {
    let mut level = vec![FinPoset::empty()];
    for size in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &level {
            let m = p.len();
            for mask in 0u64..1 << m {
                let below: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                let down_closed = below
                    .iter()
                    .all(|&b| (0..m).all(|a| !p.leq(a, b) || below.contains(&a)));
                if !down_closed {
                    continue;
                }
                let mut pairs: Vec<(usize, usize)> = Vec::new();
                for a in 0..m {
                    for b in 0..m {
                        if p.lt(a, b) {
                            pairs.push((a, b));
                        }
                    }
                }
                pairs.extend(below.iter().map(|&a| (a, m)));
                let q = FinPoset::from_relation(default_names(size), &pairs).expect("acyclic");
                if seen.insert(canonical_form(&q)) {
                    next.push(q);
                }
            }
        }
        level = next;
    }
    level
}
