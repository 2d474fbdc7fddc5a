//! Bag-of-paths betweenness and semi-supervised node classification on
//! weighted directed graphs.
//!
//! Paths through a graph are drawn from a Boltzmann distribution biased
//! toward low-cost paths by an inverse temperature `theta`. Everything in
//! this crate is computed from the fundamental matrix `Z = (I - W)^-1` of
//! that distribution:
//!
//! * [`bop`] builds the model and exposes the path probabilities, plus a
//!   path-sum oracle that sums path weights directly for auditing.
//! * [`betweenness`] computes node betweenness, group betweenness between two
//!   labeled sets and the within-class betweenness that drives the
//!   classifier.
//! * [`classify`] holds the bag-of-paths classifier and seven baseline graph
//!   classifiers behind one interface.
//! * [`eval`] reproduces the evaluation protocol: label masking, grid search
//!   by cross-validation, paired t-tests, Borda ranking and timing.
//!
//! ```
//! use bop_core::graph::{two_clique_fixture, LabelAssignment};
//! use bop_core::classify::{classify, ClassifierSpec, Method};
//!
//! let (graph, truth) = two_clique_fixture(5).unwrap();
//! let seeds = truth.restricted_to(&[0, 1, 8, 9]);
//! let spec = ClassifierSpec::new(Method::Bop, Some(1.0)).unwrap();
//! let prediction = classify(&graph, &seeds, &spec).unwrap();
//! assert_eq!(prediction.labels, vec![0, 0, 0, 0, 0, 1, 1, 1, 1, 1]);
//! ```

pub mod betweenness;
pub mod bop;
pub mod classify;
mod error;
pub mod eval;
pub mod graph;
mod linalg;
#[cfg(test)]
mod testutil;

pub use error::{Error, ErrorKind, Result};
