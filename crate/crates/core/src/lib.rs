//! Maximization of monotone k-submodular functions subject to a matroid constraint.
//!
//! A k-submodular function assigns values to labelings `x ∈ {0..k}^E`, where label 0
//! means "not chosen". [`greedy::greedy_maximize`] picks one `(element, label)` pair per
//! round and returns a solution worth at least half the optimum. The [`exact`] module
//! computes that optimum by enumeration for small instances, and the validators in
//! [`functions`] and [`matroids`] check the axioms the guarantee relies on.

pub mod budget;
pub mod cli;
pub mod domain;
pub mod error;
pub mod exact;
pub mod functions;
pub mod generate;
pub mod greedy;
pub mod instance;
pub mod matroids;
pub mod value;

pub use budget::Budget;
pub use domain::{join, meet, partial_leq, GroundSet, Label, LabeledSet, Lattice};
pub use error::{Error, Result};
pub use greedy::{greedy_maximize, guarantee_holds, GreedyOptions, GreedyOutcome, GreedyTrace};
pub use instance::Instance;
pub use value::Value;
