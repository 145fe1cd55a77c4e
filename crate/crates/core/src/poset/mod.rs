//! Finite partial orders: closures, components, the forest-like decider, and
//! a bounded simple-connectedness test.

mod enumerate;
mod forest;
mod homotopy;

pub use enumerate::{canonical_form, posets_up_to_iso};
pub use forest::{
    brute_force_tree_like, is_forest_like, Branch, CertificateError, ForestCertificate, ForestDecision,
    NonForestWitness, TooLarge, TreeNode, DEFAULT_BRUTE_FORCE_BOUND,
};
pub use homotopy::{simply_connected_bounded, Connectivity, SearchLimits};

use std::collections::VecDeque;

use thiserror::Error;

use crate::fincat::{FinCategory, Morphism};

/// A finite poset with its order stored as a dense boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinPoset {
    names: Vec<String>,
    leq: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("matrix has {got} entries, expected {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("`{0}` is not below itself")]
    NotReflexive(String),
    #[error("`{0}` and `{1}` are below each other")]
    NotAntisymmetric(String, String),
    #[error("{0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(String, String, String),
    #[error("element index {0} out of range")]
    OutOfRange(usize),
    #[error("duplicate element `{0}`")]
    Duplicate(String),
    #[error("unknown element `{0}`")]
    Unknown(String),
}

impl FinPoset {
    /// Validates a row-major order matrix.
    pub fn new(names: Vec<String>, leq: Vec<bool>) -> Result<Self, PosetError> {
        let n = names.len();
        if leq.len() != n * n {
            return Err(PosetError::WrongSize {
                expected: n * n,
                got: leq.len(),
            });
        }
        let p = FinPoset { names, leq };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<(), PosetError> {
        let n = self.len();
        for (i, a) in self.names.iter().enumerate() {
            if self.names[..i].contains(a) {
                return Err(PosetError::Duplicate(a.clone()));
            }
        }
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(PosetError::NotReflexive(self.names[a].clone()));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.leq(a, b) && self.leq(b, a) {
                    return Err(PosetError::NotAntisymmetric(
                        self.names[a].clone(),
                        self.names[b].clone(),
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(PosetError::NotTransitive(
                            self.names[a].clone(),
                            self.names[b].clone(),
                            self.names[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Reflexive-transitive closure of `pairs`, rejected if it has a cycle.
    pub fn from_relation(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(PosetError::OutOfRange(a.max(b)));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        FinPoset::new(names, leq)
    }

    /// Same as [`FinPoset::from_relation`], with elements given by name.
    pub fn from_covers(names: Vec<String>, covers: &[(String, String)]) -> Result<Self, PosetError> {
        let index = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| PosetError::Unknown(s.to_string()))
        };
        let pairs = covers
            .iter()
            .map(|(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>, PosetError>>()?;
        FinPoset::from_relation(names, &pairs)
    }

    pub fn empty() -> Self {
        FinPoset {
            names: Vec::new(),
            leq: Vec::new(),
        }
    }

    /// `x0 < x1 < ... < x(n-1)`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinPoset::from_relation(default_names(n), &pairs).unwrap()
    }

    pub fn antichain(n: usize) -> Self {
        FinPoset::from_relation(default_names(n), &[]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    /// Cover relations `a ⋖ b`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Members of `set` with nothing in `set` strictly below them.
    pub fn minimal_elements(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&a| !set.iter().any(|&b| self.lt(b, a)))
            .collect();
        out.sort_unstable();
        out
    }

    /// `{y | x <= y for some x in set}`, sorted.
    pub fn upward_closure(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&y| set.iter().any(|&x| self.leq(x, y)))
            .collect()
    }

    pub fn up(&self, x: usize) -> Vec<usize> {
        self.upward_closure(&[x])
    }

    pub fn is_upward_closed(&self, set: &[usize]) -> bool {
        self.upward_closure(set).iter().all(|y| set.contains(y))
    }

    /// Connected components of the comparability graph on `set`. Each
    /// component is sorted; components are ordered by least member.
    pub fn components(&self, set: &[usize]) -> Vec<Vec<usize>> {
        let mut members: Vec<usize> = set.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for &start in &members {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for &b in &members {
                    if !seen[b] && self.comparable(a, b) {
                        seen[b] = true;
                        comp.push(b);
                        queue.push_back(b);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected_set(&self, set: &[usize]) -> bool {
        self.components(set).len() == 1
    }

    /// Shortest path from `from` to `to` through `set` in the comparability
    /// graph, with consecutive same-direction steps merged. The result
    /// alternates between going up and going down.
    pub fn zigzag_within(&self, set: &[usize], from: usize, to: usize) -> Option<Vec<usize>> {
        let mut members: Vec<usize> = set.to_vec();
        members.sort_unstable();
        let mut prev = vec![usize::MAX; self.len()];
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(a) = queue.pop_front() {
            if a == to {
                break;
            }
            for &b in &members {
                if !seen[b] && self.comparable(a, b) {
                    seen[b] = true;
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = vec![to];
        while *path.last().unwrap() != from {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        Some(self.alternate(path))
    }

    fn alternate(&self, path: Vec<usize>) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::with_capacity(path.len());
        for x in path {
            if out.len() >= 2 {
                let (a, b) = (out[out.len() - 2], out[out.len() - 1]);
                let rising = self.leq(a, b) && self.leq(b, x);
                let falling = self.leq(b, a) && self.leq(x, b);
                if rising || falling {
                    out.pop();
                }
            }
            out.push(x);
        }
        out
    }

    /// Induced subposet on `set` (sorted), with the new-to-old index map.
    pub fn restrict(&self, set: &[usize]) -> (FinPoset, Vec<usize>) {
        let mut members = set.to_vec();
        members.sort_unstable();
        members.dedup();
        let k = members.len();
        let mut leq = vec![false; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                leq[i * k + j] = self.leq(a, b);
            }
        }
        let names = members.iter().map(|&a| self.names[a].clone()).collect();
        (FinPoset { names, leq }, members)
    }

    /// All upward-closed subsets, each sorted. Exponential; meant for small posets.
    pub fn upward_closed_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        assert!(n < usize::BITS as usize, "poset too large to enumerate subsets");
        (0u64..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| self.is_upward_closed(s))
            .collect()
    }

    /// The poset as a category: identities first, then one morphism `a->b`
    /// for each strict pair in lexicographic order.
    pub fn to_category(&self) -> FinCategory {
        let n = self.len();
        let mut morphisms: Vec<Morphism> = (0..n)
            .map(|a| Morphism {
                name: crate::fincat::identity_name(&self.names[a]),
                dom: a,
                cod: a,
            })
            .collect();
        let mut index = vec![usize::MAX; n * n];
        for a in 0..n {
            index[a * n + a] = a;
        }
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) {
                    index[a * n + b] = morphisms.len();
                    morphisms.push(Morphism {
                        name: format!("{}->{}", self.names[a], self.names[b]),
                        dom: a,
                        cod: b,
                    });
                }
            }
        }
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.dom, m.cod)).collect();
        FinCategory::from_parts(self.names.clone(), morphisms, (0..n).collect(), |g, f| {
            let (a, b) = ends[f];
            let (b2, c) = ends[g];
            (b == b2).then(|| index[a * n + c])
        })
        .expect("a poset is a category")
    }

    /// Relabels elements by `perm` (old index `i` becomes `perm[i]`).
    pub fn permute(&self, perm: &[usize]) -> FinPoset {
        let n = self.len();
        let mut names = vec![String::new(); n];
        let mut leq = vec![false; n * n];
        for a in 0..n {
            names[perm[a]] = self.names[a].clone();
            for b in 0..n {
                leq[perm[a] * n + perm[b]] = self.leq(a, b);
            }
        }
        FinPoset { names, leq }
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}
