use std::collections::VecDeque;

use thiserror::Error;

use super::{FinInjDiagram, ZigzagStep, ZigzagWord};
use crate::unionfind::UnionFind;

/// The colimit in sets: the disjoint sum of carriers modulo `x ~ F(i)(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitResult {
    /// `class_of[o][x]` is the class of element `x` of object `o`; this is
    /// the canonical map out of `F(o)`.
    pub class_of: Vec<Vec<usize>>,
    pub class_count: usize,
    pub injective: Vec<bool>,
    /// First non-injectivity, scanning objects then element pairs in index
    /// order.
    pub collision: Option<Collision>,
}

/// Two distinct elements of one carrier identified in the colimit, with the
/// element-level zigzag joining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub object: usize,
    pub first: usize,
    pub second: usize,
    /// Raw path of single steps; acting on `first` it yields `second`.
    pub word: ZigzagWord,
    /// `(object, element)` visited at each point of the path, both ends
    /// included.
    pub elements: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone {
    pub apex: Vec<String>,
    /// Leg per object, as an index map into the apex.
    pub legs: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoconeError {
    #[error("cocone has the wrong number of legs or a leg of the wrong size")]
    Shape,
    #[error("leg at `{0}` is not injective")]
    NotInjective(String),
    #[error("legs do not commute with `{0}`")]
    NotCommuting(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoconeCheck {
    Exists(Cocone),
    Blocked(Collision),
}

impl CoconeCheck {
    pub fn exists(&self) -> bool {
        matches!(self, CoconeCheck::Exists(_))
    }

    pub fn collision(&self) -> Option<&Collision> {
        match self {
            CoconeCheck::Exists(_) => None,
            CoconeCheck::Blocked(c) => Some(c),
        }
    }
}

impl Cocone {
    /// Legs must be injective and satisfy `leg(I) = leg(J) ∘ F(i)`.
    pub fn validate(&self, d: &FinInjDiagram) -> Result<(), CoconeError> {
        let shape = d.shape();
        if self.legs.len() != shape.object_count() {
            return Err(CoconeError::Shape);
        }
        for (o, leg) in self.legs.iter().enumerate() {
            if leg.len() != d.carrier(o).len() || leg.iter().any(|&y| y >= self.apex.len()) {
                return Err(CoconeError::Shape);
            }
            let mut hit = vec![false; self.apex.len()];
            for &y in leg {
                if std::mem::replace(&mut hit[y], true) {
                    return Err(CoconeError::NotInjective(shape.object_name(o).into()));
                }
            }
        }
        for f in 0..shape.morphism_count() {
            let (i, j) = (shape.dom(f), shape.cod(f));
            if (0..d.carrier(i).len()).any(|x| self.legs[i][x] != self.legs[j][d.apply(f, x)]) {
                return Err(CoconeError::NotCommuting(shape.name(f).into()));
            }
        }
        Ok(())
    }
}

struct SumIndex {
    offsets: Vec<usize>,
    total: usize,
}

impl SumIndex {
    fn new(d: &FinInjDiagram) -> Self {
        let mut offsets = Vec::with_capacity(d.carriers().len());
        let mut total = 0;
        for c in d.carriers() {
            offsets.push(total);
            total += c.len();
        }
        SumIndex { offsets, total }
    }

    fn node(&self, o: usize, x: usize) -> usize {
        self.offsets[o] + x
    }

    /// The last offset not above `node` belongs to a nonempty carrier.
    fn split(&self, node: usize) -> (usize, usize) {
        let o = self.offsets.partition_point(|&off| off <= node) - 1;
        (o, node - self.offsets[o])
    }
}

pub fn colimit_set(d: &FinInjDiagram) -> ColimitResult {
    let shape = d.shape();
    let idx = SumIndex::new(d);
    let mut uf = UnionFind::new(idx.total);
    for f in 0..shape.morphism_count() {
        let (i, j) = (shape.dom(f), shape.cod(f));
        for x in 0..d.carrier(i).len() {
            uf.union(idx.node(i, x), idx.node(j, d.apply(f, x)));
        }
    }
    let (labels, class_count) = uf.labels();
    let class_of: Vec<Vec<usize>> = (0..shape.object_count())
        .map(|o| (0..d.carrier(o).len()).map(|x| labels[idx.node(o, x)]).collect())
        .collect();
    let mut injective = Vec::with_capacity(class_of.len());
    let mut first_collision = None;
    for (o, classes) in class_of.iter().enumerate() {
        let mut pair = None;
        'scan: for a in 0..classes.len() {
            for b in a + 1..classes.len() {
                if classes[a] == classes[b] {
                    pair = Some((a, b));
                    break 'scan;
                }
            }
        }
        injective.push(pair.is_none());
        if first_collision.is_none() {
            first_collision = pair.map(|(a, b)| (o, a, b));
        }
    }
    let collision = first_collision.map(|(o, a, b)| element_path(d, &idx, o, a, b));
    ColimitResult {
        class_of,
        class_count,
        injective,
        collision,
    }
}

/// BFS over the element graph with edges `x ~ F(i)(x)` for non-identity `i`.
fn element_path(d: &FinInjDiagram, idx: &SumIndex, o: usize, a: usize, b: usize) -> Collision {
    let shape = d.shape();
    let mut adjacent: Vec<Vec<(usize, ZigzagStep)>> = vec![Vec::new(); idx.total];
    for f in 0..shape.morphism_count() {
        if shape.is_identity(f) {
            continue;
        }
        let (i, j) = (shape.dom(f), shape.cod(f));
        for x in 0..d.carrier(i).len() {
            let (from, to) = (idx.node(i, x), idx.node(j, d.apply(f, x)));
            adjacent[from].push((to, ZigzagStep::forward(f)));
            adjacent[to].push((from, ZigzagStep::backward(f)));
        }
    }
    let (start, goal) = (idx.node(o, a), idx.node(o, b));
    let mut prev: Vec<Option<(usize, ZigzagStep)>> = vec![None; idx.total];
    let mut seen = vec![false; idx.total];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(n) = queue.pop_front() {
        if n == goal {
            break;
        }
        for &(m, step) in &adjacent[n] {
            if !seen[m] {
                seen[m] = true;
                prev[m] = Some((n, step));
                queue.push_back(m);
            }
        }
    }
    let mut nodes = vec![goal];
    let mut steps = Vec::new();
    let mut cur = goal;
    while let Some((p, step)) = prev[cur] {
        steps.push(step);
        nodes.push(p);
        cur = p;
    }
    assert_eq!(cur, start, "colliding elements share a class");
    nodes.reverse();
    steps.reverse();
    Collision {
        object: o,
        first: a,
        second: b,
        word: ZigzagWord { start: o, steps },
        elements: nodes.into_iter().map(|n| idx.split(n)).collect(),
    }
}

/// A cocone exists iff every canonical map into the set colimit is injective,
/// in which case the colimit itself is one.
pub fn has_cocone(d: &FinInjDiagram) -> CoconeCheck {
    let colim = colimit_set(d);
    if let Some(c) = colim.collision {
        return CoconeCheck::Blocked(c);
    }
    let mut apex = vec![String::new(); colim.class_count];
    for (o, classes) in colim.class_of.iter().enumerate().rev() {
        for (x, &c) in classes.iter().enumerate().rev() {
            apex[c] = format!("{}:{}", d.shape().object_name(o), d.carrier(o)[x]);
        }
    }
    CoconeCheck::Exists(Cocone {
        apex,
        legs: colim.class_of,
    })
}
