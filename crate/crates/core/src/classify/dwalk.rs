//! Discriminative random walks. A walker starts from a uniformly chosen
//! labeled node of class `c` and walks until it reaches a labeled node
//! again; with probability `1 - alpha` per step it is killed first. The
//! score of an unlabeled node for class `c` is its expected number of
//! visits. With `alpha = 1` this is DW1.
//!
//! Stopping at every labeled node, not only at those of class `c`, is what
//! makes the unkilled walk informative: if only class-`c` nodes stopped it,
//! the expected visits would be proportional to the stationary
//! distribution whatever the class.

use nalgebra::DMatrix;

use super::{ClassifierSpec, Method, Prediction};
use crate::graph::{Graph, LabelAssignment};
use crate::linalg::guarded_solve;
use crate::Result;

pub(super) fn scores(p: &DMatrix<f64>, alpha: f64, labels: &LabelAssignment) -> Result<DMatrix<f64>> {
    let n = p.nrows();
    let m = labels.num_classes();
    let mut scores = DMatrix::zeros(n, m);
    let free = labels.unlabeled_nodes();
    if free.is_empty() {
        return Ok(scores);
    }
    let r = free.len();
    let counts = labels.seed_counts();
    // Visits x_c solve x_c (I - Q) = u_c B with Q = alpha P[free, free] and
    // B = alpha P[seeds of c, free]; transposed into column solves.
    let system = DMatrix::from_fn(r, r, |a, b| {
        let identity = if a == b { 1.0 } else { 0.0 };
        identity - alpha * p[(free[b], free[a])]
    });
    let mut rhs = DMatrix::zeros(r, m);
    for s in labels.labeled_nodes() {
        let c = labels.class_of(s).unwrap();
        let start = 1.0 / counts[c] as f64;
        for (a, &j) in free.iter().enumerate() {
            rhs[(a, c)] += alpha * p[(s, j)] * start;
        }
    }
    let what = format!("absorbing walk system at alpha = {alpha}");
    let visits = guarded_solve(system, &rhs, &what)?;
    for (a, &j) in free.iter().enumerate() {
        scores.set_row(j, &visits.row(a));
    }
    Ok(scores)
}

/// DW2 with the given `alpha`, or DW1 when `alpha` is `None`.
pub fn dwalk_classify(graph: &Graph, labels: &LabelAssignment, alpha: Option<f64>) -> Result<Prediction> {
    let spec = match alpha {
        Some(a) => ClassifierSpec::new(Method::Dw2, Some(a))?,
        None => ClassifierSpec::new(Method::Dw1, None)?,
    };
    super::classify(graph, labels, &spec)
}
