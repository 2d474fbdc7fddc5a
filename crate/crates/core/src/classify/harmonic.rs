//! Harmonic-function classifier: labeled nodes are clamped to their class
//! indicator and every unlabeled node takes the transition-weighted average
//! of its neighbors.

use nalgebra::DMatrix;

use super::{ClassifierSpec, Method, Prediction};
use crate::graph::{Graph, LabelAssignment};
use crate::linalg::guarded_solve;
use crate::Result;

pub(super) fn scores(p: &DMatrix<f64>, labels: &LabelAssignment) -> Result<DMatrix<f64>> {
    let n = p.nrows();
    let m = labels.num_classes();
    let unlabeled = labels.unlabeled_nodes();
    let labeled = labels.labeled_nodes();
    let mut scores = labels.indicator_matrix();
    if unlabeled.is_empty() {
        return Ok(scores);
    }
    let u = unlabeled.len();
    // (I - P_uu) F_u = P_ul Y_l
    let system = DMatrix::from_fn(u, u, |a, b| {
        let identity = if a == b { 1.0 } else { 0.0 };
        identity - p[(unlabeled[a], unlabeled[b])]
    });
    let rhs = DMatrix::from_fn(u, m, |a, c| {
        labeled
            .iter()
            .filter(|&&l| labels.class_of(l) == Some(c))
            .map(|&l| p[(unlabeled[a], l)])
            .sum()
    });
    let f = guarded_solve(system, &rhs, "harmonic system I - P_uu")?;
    for (a, &i) in unlabeled.iter().enumerate() {
        scores.set_row(i, &f.row(a));
    }
    debug_assert_eq!(scores.nrows(), n);
    Ok(scores)
}

pub fn harmonic_classify(graph: &Graph, labels: &LabelAssignment) -> Result<Prediction> {
    super::classify(graph, labels, &ClassifierSpec::new(Method::Hf, None)?)
}
