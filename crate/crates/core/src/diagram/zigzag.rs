use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FinInjDiagram, PartialInjection};
use crate::fincat::FinCategory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZigzagStep {
    pub morphism: usize,
    pub orientation: Orientation,
}

impl ZigzagStep {
    pub fn forward(morphism: usize) -> Self {
        ZigzagStep {
            morphism,
            orientation: Orientation::Forward,
        }
    }

    pub fn backward(morphism: usize) -> Self {
        ZigzagStep {
            morphism,
            orientation: Orientation::Backward,
        }
    }
}

/// A path in the shape that may traverse morphisms against their direction.
/// Forward steps act by the diagram's injections, backward steps by their
/// partial inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZigzagWord {
    pub start: usize,
    pub steps: Vec<ZigzagStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ill-formed zigzag word at step {step}")]
pub struct IllFormedWord {
    pub step: usize,
}

impl ZigzagWord {
    pub fn empty(start: usize) -> Self {
        ZigzagWord {
            start,
            steps: Vec::new(),
        }
    }

    /// The object the word ends at, checking each step is attached to the
    /// previous endpoint.
    pub fn end(&self, shape: &FinCategory) -> Result<usize, IllFormedWord> {
        if self.start >= shape.object_count() {
            return Err(IllFormedWord { step: 0 });
        }
        let mut at = self.start;
        for (i, s) in self.steps.iter().enumerate() {
            if s.morphism >= shape.morphism_count() {
                return Err(IllFormedWord { step: i });
            }
            let (d, c) = (shape.dom(s.morphism), shape.cod(s.morphism));
            at = match s.orientation {
                Orientation::Forward if d == at => c,
                Orientation::Backward if c == at => d,
                _ => return Err(IllFormedWord { step: i }),
            };
        }
        Ok(at)
    }

    /// Drops identity steps and fuses consecutive steps of the same
    /// orientation by composing them, giving a strictly alternating word with
    /// the same action on every diagram.
    pub fn normalized(&self, shape: &FinCategory) -> ZigzagWord {
        let mut steps: Vec<ZigzagStep> = Vec::new();
        for &s in &self.steps {
            if shape.is_identity(s.morphism) {
                continue;
            }
            match steps.last_mut() {
                Some(prev) if prev.orientation == s.orientation => {
                    prev.morphism = match s.orientation {
                        Orientation::Forward => shape.compose(s.morphism, prev.morphism),
                        Orientation::Backward => shape.compose(prev.morphism, s.morphism),
                    }
                    .expect("adjacent steps compose");
                }
                _ => steps.push(s),
            }
        }
        ZigzagWord {
            start: self.start,
            steps,
        }
    }
}

/// The partial injection a zigzag word induces on a diagram.
pub fn zigzag_action(d: &FinInjDiagram, w: &ZigzagWord) -> Result<PartialInjection, IllFormedWord> {
    let shape = d.shape();
    w.end(shape)?;
    let mut acc = PartialInjection::identity(d.carrier(w.start).len());
    for s in &w.steps {
        let f = s.morphism;
        let step =
            PartialInjection::total(d.carrier(shape.cod(f)).len(), d.action(f)).expect("diagram actions are injective");
        acc = match s.orientation {
            Orientation::Forward => acc.then(&step),
            Orientation::Backward => acc.then(&step.inverse()),
        };
    }
    Ok(acc)
}
