//! Forest-like posets.
//!
//! A tree-like poset is built by taking tree-like posets `K_1..K_n`, choosing
//! a nonempty connected upward-closed `U_k ⊆ K_k` in each, and adjoining one
//! new point below every `U_k`. A forest-like poset is a disjoint union of
//! tree-like ones.

use std::collections::HashMap;

use thiserror::Error;

use super::FinPoset;

/// One application of the adjoining rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeNode {
    /// The adjoined minimal point.
    pub point: usize,
    pub branches: Vec<Branch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Branch {
    /// All elements of `K_k`, sorted.
    pub region: Vec<usize>,
    /// `U_k = K_k ∩ ↑point`, sorted.
    pub upper: Vec<usize>,
    pub tree: TreeNode,
}

/// Decomposition of a forest-like poset into trees. Empty for the empty poset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ForestCertificate {
    pub trees: Vec<TreeNode>,
}

/// Evidence that a poset is not forest-like.
///
/// `region` is the connected upward-closed part of the poset under
/// examination, `point` its least-index minimal element, and `component` the
/// component of `region \ {point}` whose intersection with `↑point` splits
/// into `upper_components`. `u` and `v` lie in the first two of those, and
/// `zigzag` joins them inside `component`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NonForestWitness {
    pub region: Vec<usize>,
    pub point: usize,
    pub component: Vec<usize>,
    pub upper_components: Vec<Vec<usize>>,
    pub u: usize,
    pub v: usize,
    pub zigzag: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ForestDecision {
    Forest(ForestCertificate),
    NotForest(NonForestWitness),
}

impl ForestDecision {
    pub fn is_forest(&self) -> bool {
        matches!(self, ForestDecision::Forest(_))
    }

    pub fn certificate(&self) -> Option<&ForestCertificate> {
        match self {
            ForestDecision::Forest(c) => Some(c),
            ForestDecision::NotForest(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&NonForestWitness> {
        match self {
            ForestDecision::Forest(_) => None,
            ForestDecision::NotForest(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate covers elements {got:?}, poset has {expected}")]
    Coverage { expected: usize, got: Vec<usize> },
    #[error("recorded region of branch under {0} does not match its tree")]
    Region(usize),
    #[error("upper set under {0} is not a connected upward-closed subset of its region")]
    Upper(usize),
    #[error("replayed order differs from the poset at ({0}, {1})")]
    Order(usize, usize),
    #[error("witness: {0}")]
    Witness(String),
}

/// Recursive decision with the least-index minimal element at every step.
pub fn is_forest_like(p: &FinPoset) -> ForestDecision {
    let mut trees = Vec::new();
    for comp in p.components(&p.elements()) {
        match decide_tree(p, &comp) {
            Ok(t) => trees.push(t),
            Err(w) => return ForestDecision::NotForest(w),
        }
    }
    ForestDecision::Forest(ForestCertificate { trees })
}

fn decide_tree(p: &FinPoset, region: &[usize]) -> Result<TreeNode, NonForestWitness> {
    let point = p.minimal_elements(region)[0];
    let rest: Vec<usize> = region.iter().copied().filter(|&y| y != point).collect();
    let mut branches = Vec::new();
    for component in p.components(&rest) {
        let upper: Vec<usize> = component.iter().copied().filter(|&y| p.leq(point, y)).collect();
        let upper_components = p.components(&upper);
        if upper_components.len() != 1 {
            let (u, v) = (upper_components[0][0], upper_components[1][0]);
            let zigzag = p.zigzag_within(&component, u, v).expect("component is connected");
            return Err(NonForestWitness {
                region: region.to_vec(),
                point,
                component,
                upper_components,
                u,
                v,
                zigzag,
            });
        }
        let tree = decide_tree(p, &component)?;
        branches.push(Branch {
            region: component,
            upper,
            tree,
        });
    }
    Ok(TreeNode { point, branches })
}

impl TreeNode {
    /// Every element the tree covers, sorted.
    pub fn elements(&self) -> Vec<usize> {
        let mut out = vec![self.point];
        for b in &self.branches {
            out.extend(b.tree.elements());
        }
        out.sort_unstable();
        out
    }

    pub fn size(&self) -> usize {
        1 + self.branches.iter().map(|b| b.tree.size()).sum::<usize>()
    }
}

impl ForestCertificate {
    pub fn elements(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.trees.iter().flat_map(|t| t.elements()).collect();
        out.sort_unstable();
        out
    }

    /// Rebuilds the order on `0..n` by applying the adjoining rule bottom-up,
    /// checking along the way that every recorded upper set is connected and
    /// upward-closed in its branch.
    pub fn replay(&self) -> Result<Vec<(usize, usize)>, CertificateError> {
        let elements = self.elements();
        let n = elements.len();
        if elements != (0..n).collect::<Vec<_>>() {
            return Err(CertificateError::Coverage {
                expected: n,
                got: elements,
            });
        }
        let mut leq = vec![false; n * n];
        for t in &self.trees {
            replay_tree(t, n, &mut leq)?;
        }
        Ok((0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| leq[a * n + b])
            .collect())
    }

    /// Replays and compares against `p` element by element.
    pub fn verify(&self, p: &FinPoset) -> Result<(), CertificateError> {
        let elements = self.elements();
        if elements != p.elements() {
            return Err(CertificateError::Coverage {
                expected: p.len(),
                got: elements,
            });
        }
        let n = p.len();
        let mut leq = vec![false; n * n];
        for (a, b) in self.replay()? {
            leq[a * n + b] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if leq[a * n + b] != p.leq(a, b) {
                    return Err(CertificateError::Order(a, b));
                }
            }
        }
        Ok(())
    }
}

fn replay_tree(t: &TreeNode, n: usize, leq: &mut [bool]) -> Result<(), CertificateError> {
    leq[t.point * n + t.point] = true;
    for b in &t.branches {
        replay_tree(&b.tree, n, leq)?;
        if b.tree.elements() != b.region {
            return Err(CertificateError::Region(t.point));
        }
        let in_region = |y: &usize| b.region.binary_search(y).is_ok();
        if b.upper.is_empty() || !b.upper.iter().all(in_region) {
            return Err(CertificateError::Upper(t.point));
        }
        // Upward closure and connectivity are judged in the replayed branch.
        let ro: &[bool] = leq;
        let above = |a: usize| b.region.iter().copied().filter(move |&y| leq_at(ro, n, a, y));
        for &a in &b.upper {
            if above(a).any(|y| b.upper.binary_search(&y).is_err()) {
                return Err(CertificateError::Upper(t.point));
            }
        }
        if !connected_in(&b.upper, |a, c| leq_at(ro, n, a, c) || leq_at(ro, n, c, a)) {
            return Err(CertificateError::Upper(t.point));
        }
        for &y in &b.upper {
            leq[t.point * n + y] = true;
        }
    }
    Ok(())
}

fn leq_at(leq: &[bool], n: usize, a: usize, b: usize) -> bool {
    leq[a * n + b]
}

fn connected_in(set: &[usize], adjacent: impl Fn(usize, usize) -> bool) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut seen = vec![false; set.len()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..set.len() {
            if !seen[j] && adjacent(set[i], set[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

impl NonForestWitness {
    /// Re-checks every recorded claim against `p`.
    pub fn verify(&self, p: &FinPoset) -> Result<(), CertificateError> {
        let fail = |m: &str| Err(CertificateError::Witness(m.to_string()));
        if !p.is_upward_closed(&self.region) || !p.is_connected_set(&self.region) {
            return fail("region is not a connected upward-closed subset");
        }
        if p.minimal_elements(&self.region).first() != Some(&self.point) {
            return fail("point is not the least-index minimal element of the region");
        }
        let rest: Vec<usize> = self.region.iter().copied().filter(|&y| y != self.point).collect();
        if !p.components(&rest).contains(&self.component) {
            return fail("component is not a component of region minus point");
        }
        let upper: Vec<usize> = self
            .component
            .iter()
            .copied()
            .filter(|&y| p.leq(self.point, y))
            .collect();
        if p.components(&upper) != self.upper_components || self.upper_components.len() < 2 {
            return fail("upper components are wrong or fewer than two");
        }
        if !self.upper_components[0].contains(&self.u) || !self.upper_components[1].contains(&self.v) {
            return fail("u and v are not in the first two upper components");
        }
        let z = &self.zigzag;
        if z.first() != Some(&self.u) || z.last() != Some(&self.v) {
            return fail("zigzag endpoints");
        }
        if z.iter().any(|y| !self.component.contains(y)) || z.windows(2).any(|w| !p.comparable(w[0], w[1])) {
            return fail("zigzag leaves the component or skips an incomparable pair");
        }
        Ok(())
    }
}

pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("poset has {size} elements, bound is {bound}")]
pub struct TooLarge {
    pub size: usize,
    pub bound: usize,
}

/// Existential search over every minimal element at every level.
///
/// Independent of [`is_forest_like`]: works on bitmasks and tries all minimal
/// points rather than the first. A disconnected or empty poset is not
/// tree-like.
pub fn brute_force_tree_like(p: &FinPoset, bound: usize) -> Result<bool, TooLarge> {
    let n = p.len();
    if n > bound || n > 31 {
        return Err(TooLarge { size: n, bound });
    }
    let mut up = vec![0u32; n];
    let mut cmp = vec![0u32; n];
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) {
                up[a] |= 1 << b;
            }
            if p.leq(a, b) || p.leq(b, a) {
                cmp[a] |= 1 << b;
            }
        }
    }
    let search = BruteForce { up, cmp };
    let mut memo = HashMap::new();
    Ok(search.tree_like((1u32 << n) - 1, &mut memo))
}

struct BruteForce {
    up: Vec<u32>,
    cmp: Vec<u32>,
}

impl BruteForce {
    fn parts(&self, set: u32) -> Vec<u32> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros();
            let mut comp = 1u32 << start;
            loop {
                let mut grown = comp;
                for a in bits(comp) {
                    grown |= self.cmp[a] & set;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    fn tree_like(&self, set: u32, memo: &mut HashMap<u32, bool>) -> bool {
        if set == 0 {
            return false;
        }
        if let Some(&r) = memo.get(&set) {
            return r;
        }
        let result = self.parts(set).len() == 1
            && bits(set)
                .filter(|&x| bits(set).all(|y| y == x || self.up[y] & (1 << x) == 0))
                .any(|x| {
                    let rest = set & !(1 << x);
                    self.parts(rest).into_iter().all(|k| {
                        let upper = k & self.up[x];
                        upper != 0 && self.parts(upper).len() == 1 && self.tree_like(k, memo)
                    })
                });
        memo.insert(set, result);
        result
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn bowtie_is_not_forest_like() {
        let p = corpus::bowtie_poset();
        let w = is_forest_like(&p).witness().cloned().unwrap();
        let (a, b, c, d) = (0, 1, 2, 3);
        assert_eq!(w.point, c);
        assert_eq!(w.component, vec![a, b, d]);
        assert_eq!(w.upper_components, vec![vec![a], vec![b]]);
        assert_eq!((w.u, w.v), (a, b));
        assert_eq!(w.zigzag, vec![a, d, b]);
        w.verify(&p).unwrap();
    }

    #[test]
    fn boat_fails_in_its_upper_bowtie() {
        let p = corpus::boat_poset();
        let w = is_forest_like(&p).witness().cloned().unwrap();
        assert_eq!(w.region, vec![0, 1, 2, 3]);
        assert_eq!(w.point, 2);
        assert!(p.is_upward_closed(&w.region));
        w.verify(&p).unwrap();
    }

    #[test]
    fn span_certificate() {
        let p = corpus::span_poset();
        let cert = is_forest_like(&p).certificate().cloned().unwrap();
        let (pt, a, b) = (0, 1, 2);
        assert_eq!(cert.trees.len(), 1);
        let root = &cert.trees[0];
        assert_eq!(root.point, pt);
        let uppers: Vec<_> = root.branches.iter().map(|br| br.upper.clone()).collect();
        assert_eq!(uppers, vec![vec![a], vec![b]]);
        cert.verify(&p).unwrap();
    }

    #[test]
    fn empty_poset_has_empty_certificate() {
        let cert = is_forest_like(&FinPoset::empty()).certificate().cloned().unwrap();
        assert!(cert.trees.is_empty());
        cert.verify(&FinPoset::empty()).unwrap();
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let p = corpus::span_poset();
        let mut cert = is_forest_like(&p).certificate().cloned().unwrap();
        cert.trees[0].branches[0].upper.clear();
        assert!(cert.verify(&p).is_err());

        let chain = FinPoset::chain(3);
        let cert = is_forest_like(&chain).certificate().cloned().unwrap();
        assert!(cert.verify(&FinPoset::antichain(3)).is_err());
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_tree_like(&FinPoset::chain(3), 8), Ok(true));
        assert_eq!(brute_force_tree_like(&corpus::bowtie_poset(), 8), Ok(false));
        assert_eq!(brute_force_tree_like(&FinPoset::chain(1), 8), Ok(true));
        assert_eq!(brute_force_tree_like(&FinPoset::antichain(2), 8), Ok(false));
        assert_eq!(
            brute_force_tree_like(&FinPoset::chain(9), DEFAULT_BRUTE_FORCE_BOUND),
            Err(TooLarge { size: 9, bound: 8 })
        );
    }
}
