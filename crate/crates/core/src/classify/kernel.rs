//! Kernel alignment classifiers: scores are `K Y` with `Y` the labeled-node
//! indicator matrix and `K` the inverse of a regularized Laplacian-type
//! matrix. `D` is the diagonal of affinity row sums.

use nalgebra::{DMatrix, DVector};

use super::{ClassifierSpec, Method, Prediction};
use crate::graph::{Graph, LabelAssignment};
use crate::linalg::Factorized;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMethod {
    /// `K = (I + lambda L)^-1`, `L = D - A`.
    Rl,
    /// `K = (I + lambda D^-1/2 L D^-1/2)^-1`.
    Rnl,
    /// `K = (D - alpha A)^-1`.
    Rct,
}

impl KernelMethod {
    fn method(self) -> Method {
        match self {
            KernelMethod::Rl => Method::Rl,
            KernelMethod::Rnl => Method::Rnl,
            KernelMethod::Rct => Method::Rct,
        }
    }
}

/// The matrix whose inverse is the kernel.
pub(super) fn system(graph: &Graph, method: KernelMethod, parameter: f64) -> DMatrix<f64> {
    let a = graph.affinity();
    let n = graph.n();
    let d: DVector<f64> = DVector::from_iterator(n, a.row_iter().map(|r| r.sum()));
    let laplacian = DMatrix::from_diagonal(&d) - a;
    match method {
        KernelMethod::Rl => DMatrix::identity(n, n) + laplacian * parameter,
        KernelMethod::Rnl => {
            let s = d.map(|v| 1.0 / v.sqrt());
            let normalized = DMatrix::from_fn(n, n, |i, j| s[i] * laplacian[(i, j)] * s[j]);
            DMatrix::identity(n, n) + normalized * parameter
        }
        KernelMethod::Rct => DMatrix::from_diagonal(&d) - a * parameter,
    }
}

pub(super) fn factorize(graph: &Graph, method: KernelMethod, parameter: f64) -> Result<Factorized> {
    let what = format!("{} kernel system at parameter {parameter}", method.method());
    let lu = Factorized::new(system(graph, method, parameter), &what)?;
    lu.check_conditioning(&what)?;
    Ok(lu)
}

pub(super) fn scores(lu: &Factorized, labels: &LabelAssignment) -> Result<DMatrix<f64>> {
    lu.solve(&labels.indicator_matrix(), "kernel alignment")
}

pub fn kernel_classify(
    graph: &Graph,
    labels: &LabelAssignment,
    method: KernelMethod,
    parameter: f64,
) -> Result<Prediction> {
    let spec = ClassifierSpec::new(method.method(), Some(parameter))?;
    super::classify(graph, labels, &spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::tests::{ends_labeled, path4};
    use crate::graph::{parse_edge_list, two_clique_fixture};
    use crate::ErrorKind;

    #[test]
    fn vanishing_lambda_gives_identity_kernel() {
        let p = kernel_classify(&path4(), &ends_labeled(), KernelMethod::Rl, 1e-12).unwrap();
        let y = ends_labeled().indicator_matrix();
        assert!((&p.scores - &y).amax() <= 1e-10);
        for i in [1, 2] {
            assert!(p.scores.row(i).amax() <= 1e-10);
        }
    }

    #[test]
    fn commute_time_kernel_on_two_cliques() {
        let (g, truth) = two_clique_fixture(5).unwrap();
        let seeds = truth.restricted_to(&[0, 1, 8, 9]);
        let p = kernel_classify(&g, &seeds, KernelMethod::Rct, 0.5).unwrap();
        assert_eq!(p.accuracy(&truth, &seeds.unlabeled_nodes()), Some(1.0));
    }

    #[test]
    fn commute_time_kernel_is_singular_at_one() {
        let (g, truth) = two_clique_fixture(3).unwrap();
        let err = kernel_classify(&g, &truth.restricted_to(&[0, 5]), KernelMethod::Rct, 1.0)
            .unwrap_err();
        assert_eq!(err.kind(), ErrorKind::Numerical);
    }

    #[test]
    fn normalized_laplacian_on_regular_graph() {
        // Degree 2 everywhere, so the normalized Laplacian is L / 2.
        let g = parse_edge_list("0\t1\t1\n1\t2\t1\n2\t3\t1\n3\t0\t1\n", false).unwrap();
        let y = LabelAssignment::new(vec![Some(0), None, Some(1), None], 2).unwrap();
        for lambda in [0.1, 1.0, 10.0] {
            let rnl = kernel_classify(&g, &y, KernelMethod::Rnl, lambda).unwrap();
            let rl = kernel_classify(&g, &y, KernelMethod::Rl, lambda / 2.0).unwrap();
            assert!((&rnl.scores - &rl.scores).amax() <= 1e-12);
            assert_eq!(rnl.labels, rl.labels);
        }
    }
}
