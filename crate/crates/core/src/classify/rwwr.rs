//! Random walk with restart: `x_c = (1 - alpha)(I - alpha P^T)^-1 u_c`, the
//! stationary distribution of a walker teleported back to a uniformly chosen
//! labeled node of class `c` with probability `1 - alpha` at every step.

use nalgebra::DMatrix;

use super::{ClassifierSpec, Method, Prediction};
use crate::graph::{reference_transitions, Graph, LabelAssignment};
use crate::linalg::Factorized;
use crate::Result;

pub(super) fn factorize(graph: &Graph, alpha: f64) -> Result<Factorized> {
    let n = graph.n();
    let p = reference_transitions(graph).into_matrix();
    let what = format!("restart system I - alpha P^T at alpha = {alpha}");
    let lu = Factorized::new(DMatrix::identity(n, n) - p.transpose() * alpha, &what)?;
    lu.check_conditioning(&what)?;
    Ok(lu)
}

pub(super) fn scores(lu: &Factorized, alpha: f64, labels: &LabelAssignment) -> Result<DMatrix<f64>> {
    let mut restart = labels.indicator_matrix();
    for (c, &count) in labels.seed_counts().iter().enumerate() {
        restart.column_mut(c).scale_mut((1.0 - alpha) / count as f64);
    }
    lu.solve(&restart, "restart system")
}

pub fn rwwr_classify(graph: &Graph, labels: &LabelAssignment, alpha: f64) -> Result<Prediction> {
    super::classify(graph, labels, &ClassifierSpec::new(Method::Rwwr, Some(alpha))?)
}
