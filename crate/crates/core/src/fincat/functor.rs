use thiserror::Error;

use super::FinCategory;

/// Object and morphism maps between two finite categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctorMap {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("map sizes do not match the source category")]
    WrongSize,
    #[error("image out of range")]
    OutOfRange,
    #[error("`{0}` is sent to a morphism with the wrong domain or codomain")]
    DomCod(String),
    #[error("identity of `{0}` is not sent to an identity")]
    Identity(String),
    #[error("composite {g} ∘ {f} is not preserved")]
    Composition { g: String, f: String },
}

impl FunctorMap {
    pub fn identity(cat: &FinCategory) -> Self {
        FunctorMap {
            objects: (0..cat.object_count()).collect(),
            morphisms: (0..cat.morphism_count()).collect(),
        }
    }

    pub fn validate(&self, src: &FinCategory, tgt: &FinCategory) -> Result<(), FunctorError> {
        if self.objects.len() != src.object_count() || self.morphisms.len() != src.morphism_count() {
            return Err(FunctorError::WrongSize);
        }
        if self.objects.iter().any(|&o| o >= tgt.object_count())
            || self.morphisms.iter().any(|&f| f >= tgt.morphism_count())
        {
            return Err(FunctorError::OutOfRange);
        }
        for f in 0..src.morphism_count() {
            let img = self.morphisms[f];
            if tgt.dom(img) != self.objects[src.dom(f)] || tgt.cod(img) != self.objects[src.cod(f)] {
                return Err(FunctorError::DomCod(src.name(f).into()));
            }
        }
        for o in 0..src.object_count() {
            if self.morphisms[src.identity(o)] != tgt.identity(self.objects[o]) {
                return Err(FunctorError::Identity(src.object_name(o).into()));
            }
        }
        for f in 0..src.morphism_count() {
            for g in src.morphisms_from(src.cod(f)) {
                let gf = src.compose(g, f).unwrap();
                if tgt.compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                    return Err(FunctorError::Composition {
                        g: src.name(g).into(),
                        f: src.name(f).into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FunctorMap) -> FunctorMap {
        FunctorMap {
            objects: self.objects.iter().map(|&o| other.objects[o]).collect(),
            morphisms: self.morphisms.iter().map(|&f| other.morphisms[f]).collect(),
        }
    }

    pub fn is_identity_on_objects(&self) -> bool {
        self.objects.iter().enumerate().all(|(i, &o)| i == o)
    }

    pub fn is_surjective_on_objects(&self, tgt: &FinCategory) -> bool {
        let mut hit = vec![false; tgt.object_count()];
        for &o in &self.objects {
            hit[o] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Every target morphism between images of source objects has a preimage.
    pub fn is_full(&self, src: &FinCategory, tgt: &FinCategory) -> bool {
        for a in 0..src.object_count() {
            for b in 0..src.object_count() {
                let hit: Vec<usize> = src.hom(a, b).map(|f| self.morphisms[f]).collect();
                if tgt.hom(self.objects[a], self.objects[b]).any(|t| !hit.contains(&t)) {
                    return false;
                }
            }
        }
        true
    }
}
