//! The bag-of-paths model.
//!
//! A path `p` from `i` to `j` is drawn with probability proportional to
//! `pi_ref(p) * exp(-theta * cost(p))`, where `pi_ref` is the product of
//! reference transition probabilities along the path. Summed over all paths
//! between two nodes these weights form the fundamental matrix
//! `Z = (I - W)^-1` with `W = P_ref o exp(-theta C)`.
//!
//! [`path_sum_oracle`] sums the same weights path by path and serves as an
//! independent check of the closed form.

mod oracle;

use nalgebra::{DMatrix, DVector};

use crate::graph::{reference_transitions, Graph};
use crate::linalg::{Factorized, MIN_RCOND};
use crate::{Error, Result};

pub use oracle::{path_sum_oracle, PathKind, PathSumEstimate, ORACLE_MAX_NODES};

/// `W = P_ref o exp(-theta C)`; absent arcs contribute exactly zero.
pub fn killed_transitions(graph: &Graph, theta: f64) -> DMatrix<f64> {
    let p = reference_transitions(graph).into_matrix();
    let costs = graph.costs();
    let n = graph.n();
    DMatrix::from_fn(n, n, |i, j| match costs.get(i, j) {
        Some(c) => p[(i, j)] * (-theta * c).exp(),
        None => 0.0,
    })
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::invalid(format!("theta must be positive, got {theta}")));
    }
    Ok(())
}

/// Fundamental matrix and derived quantities for one graph and one `theta`.
/// Immutable once built.
#[derive(Debug, Clone)]
pub struct BopModel {
    theta: f64,
    w: DMatrix<f64>,
    z: DMatrix<f64>,
    z0: DMatrix<f64>,
    dz: DVector<f64>,
    // Z0^T o Z0, shared by every within-class computation.
    z0t_z0: DMatrix<f64>,
    partition: f64,
    hitting_partition: f64,
}

impl BopModel {
    /// Builds the model. `Z` comes from LU solves of `(I - W) X = I`; the
    /// build fails when `I - W` is too ill-conditioned to trust, which
    /// happens as `theta` approaches zero.
    pub fn build(graph: &Graph, theta: f64) -> Result<BopModel> {
        check_theta(theta)?;
        let n = graph.n();
        let w = killed_transitions(graph, theta);
        let what = format!("I - W at theta = {theta}");
        let system = DMatrix::identity(n, n) - &w;
        let lu = Factorized::new(system, &what)?;
        let z = lu.inverse(&what)?;
        let rcond = lu.rcond_with_inverse(&z);
        if !(rcond >= MIN_RCOND) {
            return Err(Error::numerical(format!(
                "{what} is ill-conditioned (reciprocal condition {rcond:.3e}); use a larger theta"
            )));
        }

        let dz = z.diagonal();
        if let Some(j) = dz.iter().position(|&d| !(d >= 1.0 - 1e-12)) {
            return Err(Error::numerical(format!(
                "z_jj = {} < 1 at node {j} for theta = {theta}",
                dz[j]
            )));
        }
        let mut z0 = z.clone();
        z0.fill_diagonal(0.0);
        let z0t_z0 = z0.transpose().component_mul(&z0);
        let partition = z.sum();
        let hitting_partition = (0..n)
            .map(|j| z.column(j).sum() / dz[j])
            .sum::<f64>();
        Ok(BopModel {
            theta,
            w,
            z,
            z0,
            dz,
            z0t_z0,
            partition,
            hitting_partition,
        })
    }

    pub fn n(&self) -> usize {
        self.z.nrows()
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `W`, the substochastic killed transition matrix.
    pub fn weights(&self) -> &DMatrix<f64> {
        &self.w
    }

    /// The fundamental matrix `Z = (I - W)^-1`.
    pub fn fundamental(&self) -> &DMatrix<f64> {
        &self.z
    }

    /// `Z` with its diagonal set to zero.
    pub fn fundamental_offdiag(&self) -> &DMatrix<f64> {
        &self.z0
    }

    /// The diagonal `z_jj`, each at least one.
    pub fn diagonal(&self) -> &DVector<f64> {
        &self.dz
    }

    pub(crate) fn z0t_hadamard_z0(&self) -> &DMatrix<f64> {
        &self.z0t_z0
    }

    /// Partition function, the grand sum of `Z`.
    pub fn partition(&self) -> f64 {
        self.partition
    }

    /// Hitting-path partition function, `sum_ij z_ij / z_jj`.
    pub fn hitting_partition(&self) -> f64 {
        self.hitting_partition
    }
}

/// `P(s = i, e = j) = z_ij / Z`.
pub fn bop_probabilities(model: &BopModel) -> DMatrix<f64> {
    model.fundamental() / model.partition()
}

#[derive(Debug, Clone)]
pub struct HittingProbabilities {
    /// `z^h_ij = z_ij / z_jj`, with a unit diagonal.
    pub zh: DMatrix<f64>,
    /// `z^h_ij / Z_h`.
    pub probabilities: DMatrix<f64>,
}

pub fn hitting_probabilities(model: &BopModel) -> HittingProbabilities {
    let n = model.n();
    let z = model.fundamental();
    let dz = model.diagonal();
    let mut zh = DMatrix::from_fn(n, n, |i, j| z[(i, j)] / dz[j]);
    zh.fill_diagonal(1.0);
    let probabilities = &zh / model.hitting_partition();
    HittingProbabilities { zh, probabilities }
}
