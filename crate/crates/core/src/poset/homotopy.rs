//! Bounded test for simple connectivity of a poset's order complex.
//!
//! Per component, the fundamental group is presented by the 2-skeleton: one
//! generator per comparability edge outside a BFS spanning tree and one
//! relator per 3-chain. A nontrivial abelianization answers `No`; a coset
//! enumeration that collapses to a single coset answers `Yes`. Anything else
//! within the limits is `Unknown`.

use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use super::FinPoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectivity {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_cosets: usize,
    pub max_time: Duration,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_cosets: 20_000,
            max_time: Duration::from_secs(5),
        }
    }
}

/// A free-group letter: generator index with sign.
type Letter = (usize, bool);

struct Presentation {
    generators: usize,
    relators: Vec<Vec<Letter>>,
}

pub fn simply_connected_bounded(p: &FinPoset, limits: SearchLimits) -> Connectivity {
    let started = Instant::now();
    let mut verdict = Connectivity::Yes;
    for comp in p.components(&p.elements()) {
        let pres = presentation(p, &comp);
        match decide_trivial(&pres, limits, started) {
            Connectivity::No => return Connectivity::No,
            Connectivity::Unknown => verdict = Connectivity::Unknown,
            Connectivity::Yes => {}
        }
    }
    verdict
}

fn presentation(p: &FinPoset, comp: &[usize]) -> Presentation {
    // Spanning tree of the comparability graph, BFS from the least element.
    let mut in_tree = HashMap::new();
    let mut seen = vec![false; p.len()];
    seen[comp[0]] = true;
    let mut queue = VecDeque::from([comp[0]]);
    while let Some(a) = queue.pop_front() {
        for &b in comp {
            if !seen[b] && p.comparable(a, b) {
                seen[b] = true;
                in_tree.insert(edge(a, b), ());
                queue.push_back(b);
            }
        }
    }
    let mut generator_of = HashMap::new();
    for &a in comp {
        for &b in comp {
            if p.lt(a, b) && !in_tree.contains_key(&edge(a, b)) {
                let next = generator_of.len();
                generator_of.insert((a, b), next);
            }
        }
    }
    let letter = |a: usize, b: usize, inverse: bool| generator_of.get(&(a, b)).map(|&g| (g, inverse));
    let mut relators = Vec::new();
    for &a in comp {
        for &b in comp {
            if !p.lt(a, b) {
                continue;
            }
            for &c in comp {
                if p.lt(b, c) {
                    // (a<b)(b<c)(a<c)^-1
                    let word: Vec<Letter> = [letter(a, b, false), letter(b, c, false), letter(a, c, true)]
                        .into_iter()
                        .flatten()
                        .collect();
                    let word = cyclically_reduce(word);
                    if !word.is_empty() {
                        relators.push(word);
                    }
                }
            }
        }
    }
    Presentation {
        generators: generator_of.len(),
        relators,
    }
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn cyclically_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in word {
        match out.last() {
            Some(&(g, s)) if g == l.0 && s != l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    while out.len() >= 2 {
        let (f, l) = (out[0], out[out.len() - 1]);
        if f.0 == l.0 && f.1 != l.1 {
            out.pop();
            out.remove(0);
        } else {
            break;
        }
    }
    out
}

fn decide_trivial(pres: &Presentation, limits: SearchLimits, started: Instant) -> Connectivity {
    if pres.generators == 0 {
        return Connectivity::Yes;
    }
    match abelianization_trivial(pres) {
        Some(false) => return Connectivity::No,
        Some(true) => {}
        None => return Connectivity::Unknown,
    }
    match enumerate_cosets(pres, limits, started) {
        Some(1) => Connectivity::Yes,
        Some(_) => Connectivity::No,
        None => Connectivity::Unknown,
    }
}

/// Whether the relator lattice spans `Z^g`, by integer row reduction.
/// `None` on arithmetic overflow.
fn abelianization_trivial(pres: &Presentation) -> Option<bool> {
    let g = pres.generators;
    let mut rows: Vec<Vec<i128>> = pres
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i128; g];
            for &(gen, inv) in r {
                row[gen] += if inv { -1 } else { 1 };
            }
            row
        })
        .filter(|row| row.iter().any(|&x| x != 0))
        .collect();
    for (pivot_row, col) in (0..g).enumerate() {
        // Euclid on the column until a single nonzero entry remains at or
        // below pivot_row.
        loop {
            let nonzero: Vec<usize> = (pivot_row..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nonzero.is_empty() {
                return Some(false);
            }
            let best = *nonzero.iter().min_by_key(|&&r| rows[r][col].unsigned_abs())?;
            rows.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col] != 0 {
                    let pivot = rows[pivot_row].clone();
                    let q = rows[r][col] / pivot[col];
                    for (x, &p) in rows[r][col..].iter_mut().zip(&pivot[col..]) {
                        *x = x.checked_sub(q.checked_mul(p)?)?;
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col].abs() != 1 {
            return Some(false);
        }
    }
    Some(true)
}

/// Coset enumeration over the trivial subgroup (HLT strategy). Returns the
/// number of cosets if the table closes within the limits.
fn enumerate_cosets(pres: &Presentation, limits: SearchLimits, started: Instant) -> Option<usize> {
    let mut table = CosetTable::new(pres.generators * 2);
    let relators: Vec<Vec<usize>> = pres
        .relators
        .iter()
        .map(|r| r.iter().map(|&(g, inv)| 2 * g + inv as usize).collect())
        .collect();
    let mut current = 0;
    while current < table.rows.len() {
        if started.elapsed() > limits.max_time {
            return None;
        }
        if table.is_live(current) {
            for rel in &relators {
                table.scan_and_fill(current, rel, limits.max_cosets)?;
                if !table.is_live(current) {
                    break;
                }
            }
            if table.is_live(current) {
                for col in 0..table.columns {
                    if table.rows[current][col].is_none() {
                        table.define(current, col, limits.max_cosets)?;
                    }
                }
            }
        }
        current += 1;
    }
    Some(table.live_count())
}

struct CosetTable {
    columns: usize,
    rows: Vec<Vec<Option<usize>>>,
    forward: Vec<usize>,
}

fn inverse(col: usize) -> usize {
    col ^ 1
}

impl CosetTable {
    fn new(columns: usize) -> Self {
        CosetTable {
            columns,
            rows: vec![vec![None; columns]],
            forward: vec![0],
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn live_count(&self) -> usize {
        (0..self.rows.len()).filter(|&c| self.is_live(c)).count()
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.forward[root] != root {
            root = self.forward[root];
        }
        let mut cur = c;
        while self.forward[cur] != root {
            let next = self.forward[cur];
            self.forward[cur] = root;
            cur = next;
        }
        root
    }

    fn define(&mut self, c: usize, col: usize, max: usize) -> Option<()> {
        if self.live_count_bound() >= max {
            return None;
        }
        let fresh = self.rows.len();
        self.rows.push(vec![None; self.columns]);
        self.forward.push(fresh);
        self.rows[c][col] = Some(fresh);
        self.rows[fresh][inverse(col)] = Some(c);
        Some(())
    }

    fn live_count_bound(&self) -> usize {
        self.rows.len()
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize], max: usize) -> Option<()> {
        let mut f = c;
        let mut b = c;
        let mut i = 0;
        let mut j = word.len();
        loop {
            while i < j {
                match self.rows[f][word[i]] {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Some(());
            }
            while j > i {
                match self.rows[b][inverse(word[j - 1])] {
                    Some(next) => {
                        b = next;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                self.coincidence(f, b);
                return Some(());
            }
            if j == i + 1 {
                self.rows[f][word[i]] = Some(b);
                self.rows[b][inverse(word[i])] = Some(f);
                return Some(());
            }
            self.define(f, word[i], max)?;
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for col in 0..self.columns {
                if let Some(f) = self.rows[e][col] {
                    self.rows[f][inverse(col)] = None;
                    let (e1, f1) = (self.rep(e), self.rep(f));
                    if let Some(x) = self.rows[e1][col] {
                        self.merge(f1, x, &mut queue);
                    } else if let Some(x) = self.rows[f1][inverse(col)] {
                        self.merge(e1, x, &mut queue);
                    } else {
                        self.rows[e1][col] = Some(f1);
                        self.rows[f1][inverse(col)] = Some(e1);
                    }
                }
            }
        }
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.forward[hi] = lo;
            queue.push_back(hi);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn pres(generators: usize, relators: &[&[(usize, bool)]]) -> Presentation {
        Presentation {
            generators,
            relators: relators.iter().map(|r| r.to_vec()).collect(),
        }
    }

    fn trivial(p: &Presentation) -> Connectivity {
        decide_trivial(p, SearchLimits::default(), Instant::now())
    }

    #[test]
    fn bowtie_is_not_simply_connected() {
        let c = simply_connected_bounded(&corpus::bowtie_poset(), SearchLimits::default());
        assert_eq!(c, Connectivity::No);
    }

    #[test]
    fn boat_is_simply_connected() {
        let c = simply_connected_bounded(&corpus::boat_poset(), SearchLimits::default());
        assert_eq!(c, Connectivity::Yes);
    }

    #[test]
    fn chains_and_antichains() {
        for n in 0..6 {
            assert_eq!(
                simply_connected_bounded(&FinPoset::chain(n), SearchLimits::default()),
                Connectivity::Yes
            );
            assert_eq!(
                simply_connected_bounded(&FinPoset::antichain(n), SearchLimits::default()),
                Connectivity::Yes
            );
        }
    }

    #[test]
    fn group_presentations() {
        let x = |inv| (0, inv);
        let y = |inv| (1, inv);
        // <x | x^2>: Z/2.
        assert_eq!(trivial(&pres(1, &[&[x(false), x(false)]])), Connectivity::No);
        // <x, y | x y^-1, y>: trivial.
        assert_eq!(
            trivial(&pres(2, &[&[x(false), y(true)], &[y(false)]])),
            Connectivity::Yes
        );
        // <x, y | x^2, y^3, (xy)^5>: A5 is perfect but not trivial.
        let xy5: Vec<(usize, bool)> = (0..5).flat_map(|_| [x(false), y(false)]).collect();
        let a5 = pres(2, &[&[x(false), x(false)], &[y(false), y(false), y(false)], &xy5]);
        assert_eq!(abelianization_trivial(&a5), Some(true));
        assert_eq!(trivial(&a5), Connectivity::No);
    }

    #[test]
    fn limits_yield_unknown() {
        let x = |inv| (0, inv);
        let y = |inv| (1, inv);
        let xy5: Vec<(usize, bool)> = (0..5).flat_map(|_| [x(false), y(false)]).collect();
        let a5 = pres(2, &[&[x(false), x(false)], &[y(false), y(false), y(false)], &xy5]);
        let tight = SearchLimits {
            max_cosets: 10,
            max_time: Duration::from_secs(5),
        };
        assert_eq!(decide_trivial(&a5, tight, Instant::now()), Connectivity::Unknown);
    }
}
