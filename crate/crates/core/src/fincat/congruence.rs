use thiserror::Error;

use super::{CategoryError, FinCategory, FunctorMap, Morphism};
use crate::unionfind::UnionFind;

/// A partition of the morphisms of a category.
///
/// Classes are sorted, and numbered by their least member, so two equal
/// partitions always compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("seed pair ({0}, {1}) is not parallel")]
    NonParallelSeed(String, String),
    #[error("partition covers {got} morphisms, category has {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("partition is not a congruence: {0}")]
    NotACongruence(String),
}

impl Congruence {
    pub fn discrete(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    /// Normalizes an arbitrary labelling into canonical form.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut uf = UnionFind::new(labels.len());
        let mut first = std::collections::HashMap::new();
        for (i, &l) in labels.iter().enumerate() {
            if let Some(&j) = first.get(&l) {
                uf.union(i, j);
            } else {
                first.insert(l, i);
            }
        }
        Self::from_union_find(&mut uf)
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        let (class_of, count) = uf.labels();
        let mut classes = vec![Vec::new(); count];
        for (i, &c) in class_of.iter().enumerate() {
            classes[c].push(i);
        }
        Congruence { class_of, classes }
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_of(&self, f: usize) -> usize {
        self.class_of[f]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Least morphism in the class of `f`.
    pub fn representative(&self, f: usize) -> usize {
        self.classes[self.class_of[f]][0]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.classes.iter().all(|c| c.iter().all(|&f| other.related(c[0], f)))
    }

    /// Meet of two partitions.
    pub fn intersect(&self, other: &Congruence) -> Congruence {
        let labels: Vec<usize> = (0..self.len())
            .map(|f| self.class_of[f] * other.class_count() + other.class_of[f])
            .collect();
        Congruence::from_labels(&labels)
    }

    /// Checks that related morphisms are parallel and that the relation is
    /// compatible with composition on both sides.
    pub fn check(&self, cat: &FinCategory) -> Result<(), CongruenceError> {
        if self.len() != cat.morphism_count() {
            return Err(CongruenceError::WrongSize {
                expected: cat.morphism_count(),
                got: self.len(),
            });
        }
        for class in &self.classes {
            for &f in class {
                if !cat.parallel(class[0], f) {
                    return Err(CongruenceError::NotACongruence(format!(
                        "{} ~ {} are not parallel",
                        cat.name(class[0]),
                        cat.name(f)
                    )));
                }
            }
        }
        for class in &self.classes {
            let a = class[0];
            for &b in &class[1..] {
                for g in cat.morphisms_from(cat.cod(a)) {
                    let (ga, gb) = (cat.compose(g, a).unwrap(), cat.compose(g, b).unwrap());
                    if !self.related(ga, gb) {
                        return Err(CongruenceError::NotACongruence(format!(
                            "{} ~ {} but not after {}",
                            cat.name(a),
                            cat.name(b),
                            cat.name(g)
                        )));
                    }
                }
                for h in cat.morphisms_into(cat.dom(a)) {
                    let (ah, bh) = (cat.compose(a, h).unwrap(), cat.compose(b, h).unwrap());
                    if !self.related(ah, bh) {
                        return Err(CongruenceError::NotACongruence(format!(
                            "{} ~ {} but not before {}",
                            cat.name(a),
                            cat.name(b),
                            cat.name(h)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_congruence(&self, cat: &FinCategory) -> bool {
        self.check(cat).is_ok()
    }

    /// Pairs `(least member, other member)` for every non-trivial class.
    pub fn merged_pairs(&self) -> Vec<(usize, usize)> {
        self.classes
            .iter()
            .flat_map(|c| c[1..].iter().map(move |&f| (c[0], f)))
            .collect()
    }
}

/// Least congruence containing `seed`.
pub fn congruence_close(cat: &FinCategory, seed: &[(usize, usize)]) -> Result<Congruence, CongruenceError> {
    close_from(cat, &Congruence::discrete(cat.morphism_count()), seed)
}

/// Least congruence containing both `base` (assumed a congruence) and `seed`.
///
/// Worklist over a union-find: every pair that actually merges two classes is
/// queued, and processing a pair merges its left and right multiples.
pub(crate) fn close_from(
    cat: &FinCategory,
    base: &Congruence,
    seed: &[(usize, usize)],
) -> Result<Congruence, CongruenceError> {
    for &(a, b) in seed {
        if !cat.parallel(a, b) {
            return Err(CongruenceError::NonParallelSeed(cat.name(a).into(), cat.name(b).into()));
        }
    }
    let mut uf = UnionFind::new(cat.morphism_count());
    for (a, b) in base.merged_pairs() {
        uf.union(a, b);
    }
    let mut pending: std::collections::VecDeque<(usize, usize)> =
        seed.iter().copied().filter(|&(a, b)| uf.union(a, b)).collect();
    while let Some((a, b)) = pending.pop_front() {
        for g in cat.morphisms_from(cat.cod(a)) {
            let (ga, gb) = (cat.compose(g, a).unwrap(), cat.compose(g, b).unwrap());
            if uf.union(ga, gb) {
                pending.push_back((ga, gb));
            }
        }
        for h in cat.morphisms_into(cat.dom(a)) {
            let (ah, bh) = (cat.compose(a, h).unwrap(), cat.compose(b, h).unwrap());
            if uf.union(ah, bh) {
                pending.push_back((ah, bh));
            }
        }
    }
    Ok(Congruence::from_union_find(&mut uf))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub category: FinCategory,
    /// Identity on objects; sends each morphism to its class.
    pub projection: FunctorMap,
}

/// `cat / cong`. Each class is named after its least member.
pub fn quotient(cat: &FinCategory, cong: &Congruence) -> Result<Quotient, CongruenceError> {
    cong.check(cat)?;
    let morphisms: Vec<Morphism> = cong.classes().iter().map(|c| cat.morphisms()[c[0]].clone()).collect();
    let identity = (0..cat.object_count())
        .map(|o| cong.class_of(cat.identity(o)))
        .collect();
    let category = FinCategory::from_parts(cat.objects().to_vec(), morphisms, identity, |g, f| {
        let (gr, fr) = (cong.classes()[g][0], cong.classes()[f][0]);
        cat.compose(gr, fr).map(|r| cong.class_of(r))
    })
    .map_err(|e: CategoryError| CongruenceError::NotACongruence(e.to_string()))?;
    let projection = FunctorMap {
        objects: (0..cat.object_count()).collect(),
        morphisms: (0..cat.morphism_count()).map(|f| cong.class_of(f)).collect(),
    };
    Ok(Quotient { category, projection })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicReflection {
    pub category: FinCategory,
    pub projection: FunctorMap,
    pub congruence: Congruence,
}

/// Universal monic quotient.
///
/// Starting from equality, repeatedly adds `(g, h)` whenever `f ∘ g ~ f ∘ h`
/// for parallel `g, h`, then re-closes, until the quotient is monic.
pub fn monic_reflection(cat: &FinCategory) -> MonicReflection {
    let mut cong = Congruence::discrete(cat.morphism_count());
    loop {
        let mut seed = Vec::new();
        for f in 0..cat.morphism_count() {
            let into: Vec<usize> = cat.morphisms_into(cat.dom(f)).collect();
            for (i, &g) in into.iter().enumerate() {
                for &h in &into[i + 1..] {
                    if cat.parallel(g, h)
                        && !cong.related(g, h)
                        && cong.related(cat.compose(f, g).unwrap(), cat.compose(f, h).unwrap())
                    {
                        seed.push((g, h));
                    }
                }
            }
        }
        if seed.is_empty() {
            break;
        }
        cong = close_from(cat, &cong, &seed).expect("seed pairs are parallel");
    }
    let Quotient { category, projection } = quotient(cat, &cong).expect("closure yields a congruence");
    MonicReflection {
        category,
        projection,
        congruence: cong,
    }
}
