use nalgebra::DMatrix;

use super::Prediction;
use crate::betweenness::within_class_betweenness;
use crate::bop::BopModel;
use crate::graph::LabelAssignment;
use crate::Result;

pub(super) fn scores(model: &BopModel, labels: &LabelAssignment) -> Result<DMatrix<f64>> {
    let m = labels.num_classes();
    let mut scores = DMatrix::zeros(model.n(), m);
    for c in 0..m {
        let column = within_class_betweenness(model, &labels.mask(c)).map_err(|e| e.for_class(c))?;
        scores.set_column(c, &nalgebra::DVector::from_vec(column.values));
    }
    Ok(scores)
}

/// Assigns each unlabeled node to the class whose labeled nodes it lies
/// most between. Score column `c` is the within-class betweenness of class
/// `c`. Every class needs at least two labeled nodes.
pub fn bop_classify(model: &BopModel, labels: &LabelAssignment) -> Result<Prediction> {
    super::check_labels(model.n(), labels, super::Method::Bop)?;
    Ok(Prediction::from_scores(scores(model, labels)?, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{two_clique_fixture, Graph};

    #[test]
    fn scores_are_the_within_class_columns() {
        let (g, truth) = two_clique_fixture(5).unwrap();
        let seeds = truth.restricted_to(&[0, 1, 8, 9]);
        let model = BopModel::build(&g, 1.0).unwrap();
        let p = bop_classify(&model, &seeds).unwrap();
        for c in 0..2 {
            let col = within_class_betweenness(&model, &seeds.mask(c)).unwrap();
            assert_eq!(p.scores.column(c).as_slice(), col.values.as_slice());
        }
    }

    #[test]
    fn cost_scaling_is_absorbed_by_theta() {
        let (g, truth) = two_clique_fixture(4).unwrap();
        let mut a = g.affinity().clone();
        a[(0, 1)] = 3.0;
        a[(1, 0)] = 3.0;
        a[(2, 6)] = 0.5;
        a[(6, 2)] = 0.5;
        let g = Graph::from_affinity(a, false).unwrap();
        let scaled = g.with_scaled_costs(4.0).unwrap();
        let m1 = BopModel::build(&g, 1.0).unwrap();
        let m4 = BopModel::build(&scaled, 0.25).unwrap();
        assert_eq!(m1.weights(), m4.weights());
        let seeds = truth.restricted_to(&[0, 1, 6, 7]);
        assert_eq!(bop_classify(&m1, &seeds).unwrap(), bop_classify(&m4, &seeds).unwrap());
    }
}
