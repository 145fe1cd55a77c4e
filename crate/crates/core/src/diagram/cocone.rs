//! Constructive cocones over forest-like poset shapes, assembled from binary
//! amalgamations of injections and a final disjoint union.

use thiserror::Error;

use super::{Cocone, CoconeError, FinInjDiagram};
use crate::fincat::skeleton_poset;
use crate::poset::{ForestCertificate, TreeNode};
use crate::unionfind::UnionFind;

/// Amalgam of two injections out of a common set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub apex_len: usize,
    pub leg_b: Vec<usize>,
    pub leg_c: Vec<usize>,
}

/// Pushout of injections `f: A -> B` and `g: A -> C` in sets:
/// `(B ⊔ C) / f(a) ~ g(a)`. Apex elements are numbered by first occurrence,
/// `B` before `C`.
pub fn pushout_inj(b_len: usize, c_len: usize, f: &[usize], g: &[usize]) -> Pushout {
    assert_eq!(f.len(), g.len(), "pushout legs need a common domain");
    let mut uf = UnionFind::new(b_len + c_len);
    for (&fb, &gc) in f.iter().zip(g) {
        uf.union(fb, b_len + gc);
    }
    let (labels, apex_len) = uf.labels();
    Pushout {
        apex_len,
        leg_b: labels[..b_len].to_vec(),
        leg_c: labels[b_len..].to_vec(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("certificate does not match the diagram's shape: {0}")]
    CertificateMismatch(String),
    #[error("assembled legs failed validation: {0}")]
    InvalidCocone(#[from] CoconeError),
}

/// Builds a cocone over a diagram whose shape is the poset certified by
/// `cert`, following the certificate's decomposition.
///
/// At a node with adjoined point `x` and branches `(K_k, U_k)`, each branch
/// contributes the injection `F(x) -> F(U) -> X_k` through the least element
/// `U` of `U_k`; these are amalgamated left to right. Trees are then joined
/// by disjoint union.
pub fn build_cocone_forest(d: &FinInjDiagram, cert: &ForestCertificate) -> Result<Cocone, BuildError> {
    let shape = d.shape();
    let mismatch = |m: &str| BuildError::CertificateMismatch(m.to_string());
    let skeleton = skeleton_poset(shape).map_err(|e| mismatch(&e.to_string()))?;
    if skeleton.poset.len() != shape.object_count() {
        return Err(mismatch("shape is a preorder but not a poset"));
    }
    cert.verify(&skeleton.poset).map_err(|e| mismatch(&e.to_string()))?;

    let n = shape.object_count();
    let mut arrow = vec![usize::MAX; n * n];
    for f in 0..shape.morphism_count() {
        arrow[shape.dom(f) * n + shape.cod(f)] = f;
    }
    let builder = Builder { d, arrow, n };

    let mut apex_len = 0;
    let mut legs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for tree in &cert.trees {
        let part = builder.tree(tree);
        for (o, leg) in part.legs {
            legs[o] = leg.into_iter().map(|y| y + apex_len).collect();
        }
        apex_len += part.apex_len;
    }

    // An object whose leg is onto names the apex directly.
    let cocone = if let Some(top) = (0..n).rev().find(|&o| legs[o].len() == apex_len) {
        let mut relabel = vec![0; apex_len];
        for (x, &y) in legs[top].iter().enumerate() {
            relabel[y] = x;
        }
        Cocone {
            apex: d.carrier(top).to_vec(),
            legs: legs
                .into_iter()
                .map(|leg| leg.into_iter().map(|y| relabel[y]).collect())
                .collect(),
        }
    } else {
        let mut apex: Vec<Option<String>> = vec![None; apex_len];
        for (o, leg) in legs.iter().enumerate() {
            for (x, &y) in leg.iter().enumerate() {
                apex[y].get_or_insert_with(|| format!("{}:{}", shape.object_name(o), d.carrier(o)[x]));
            }
        }
        Cocone {
            apex: apex
                .into_iter()
                .enumerate()
                .map(|(i, l)| l.unwrap_or_else(|| format!("#{i}")))
                .collect(),
            legs,
        }
    };
    cocone.validate(d)?;
    Ok(cocone)
}

struct Builder<'a> {
    d: &'a FinInjDiagram,
    arrow: Vec<usize>,
    n: usize,
}

struct Partial {
    apex_len: usize,
    legs: Vec<(usize, Vec<usize>)>,
}

impl Builder<'_> {
    fn tree(&self, node: &TreeNode) -> Partial {
        let x = node.point;
        let x_len = self.d.carrier(x).len();
        let mut acc = Partial {
            apex_len: x_len,
            legs: vec![(x, (0..x_len).collect())],
        };
        for branch in &node.branches {
            let sub = self.tree(&branch.tree);
            let u = branch.upper[0];
            let to_u = self.d.action(self.arrow[x * self.n + u]);
            let leg_u = &sub.legs.iter().find(|(o, _)| *o == u).expect("U lies in its branch").1;
            let into_branch: Vec<usize> = to_u.iter().map(|&e| leg_u[e]).collect();
            let leg_x = &acc.legs[0].1;
            let p = pushout_inj(acc.apex_len, sub.apex_len, leg_x, &into_branch);
            for (_, leg) in acc.legs.iter_mut() {
                for y in leg.iter_mut() {
                    *y = p.leg_b[*y];
                }
            }
            acc.legs.extend(
                sub.legs
                    .into_iter()
                    .map(|(o, leg)| (o, leg.into_iter().map(|y| p.leg_c[y]).collect())),
            );
            acc.apex_len = p.apex_len;
        }
        acc
    }
}
