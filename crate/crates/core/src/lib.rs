//! Deciding which finite diagram shapes can always be completed by
//! amalgamation, with checkable evidence in both directions.
//!
//! A shape is a finite category given by its full composition table. The
//! answer is positive exactly when the skeleton of its monic reflection is a
//! forest-like poset; [`decide`] returns a decomposition certificate in that
//! case and a finite diagram of sets and injections with no cocone otherwise.

pub mod corpus;
pub mod decide;
pub mod diagram;
pub mod fincat;
pub mod format;
pub mod gen;
pub mod invcat;
pub mod poset;
mod unionfind;

pub use decide::{decide, explain, Evidence, Verdict};
