//! Bag-of-paths betweenness measures.
//!
//! A path from `i` to `k` that visits an intermediate node `j` splits
//! uniquely into a hitting path `i -> j` followed by an unconstrained path
//! `j -> k`, so its total weight is `z_ij z_jk / z_jj`. All measures here are
//! posteriors of the intermediate node built from that product, with the
//! three endpoints pairwise distinct (`i != j`, `j != k`, `i != k`).
//!
//! Each measure has a matrix-form implementation (the one used in
//! production) and an `O(n^3)` direct sum in [`direct`], kept as a
//! reference.

use serde::Serialize;

use crate::bop::BopModel;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScoreKind {
    Betweenness,
    GroupBetweenness,
    Membership,
}

/// Nonnegative per-node scores.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreVector {
    pub values: Vec<f64>,
    pub kind: ScoreKind,
}

impl ScoreVector {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// `P(int = j | s = i, e = k)` over intermediate nodes `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntermediatePosterior {
    pub source: usize,
    pub target: usize,
    /// Zero at `source` and `target`; sums to one otherwise.
    pub probs: Vec<f64>,
}

fn check_pair(model: &BopModel, i: usize, k: usize) -> Result<()> {
    let n = model.n();
    if n < 3 {
        return Err(Error::invalid(format!(
            "betweenness needs at least 3 nodes, graph has {n}"
        )));
    }
    if i >= n || k >= n {
        return Err(Error::invalid(format!("node out of range for {n} nodes")));
    }
    if i == k {
        return Err(Error::invalid(format!(
            "source and target must differ (both are {i})"
        )));
    }
    Ok(())
}

pub fn intermediate_posterior(model: &BopModel, i: usize, k: usize) -> Result<IntermediatePosterior> {
    check_pair(model, i, k)?;
    let z = model.fundamental();
    let dz = model.diagonal();
    let mut probs: Vec<f64> = (0..model.n())
        .map(|j| {
            if j == i || j == k {
                0.0
            } else {
                z[(i, j)] * z[(j, k)] / dz[j]
            }
        })
        .collect();
    let total: f64 = probs.iter().sum();
    if !(total > 0.0) {
        return Err(Error::numerical(format!(
            "no intermediate path mass between {i} and {k}"
        )));
    }
    probs.iter_mut().for_each(|p| *p /= total);
    Ok(IntermediatePosterior {
        source: i,
        target: k,
        probs,
    })
}

/// `bet_j`, the sum over ordered pairs `(i, k)` of the posterior probability
/// that a path from `i` to `k` visits `j`.
///
/// Computed as `D_z^-1 diag[(Z0^T) N' (Z0^T)]`, where `N'` holds the
/// reciprocal pair normalizers `1 / n_ik` off the diagonal and
/// `N = Z0 D_z^-1 Z0`.
pub fn bop_betweenness(model: &BopModel) -> Result<ScoreVector> {
    let n = model.n();
    if n < 3 {
        return Err(Error::invalid(format!(
            "betweenness needs at least 3 nodes, graph has {n}"
        )));
    }
    let z0 = model.fundamental_offdiag();
    let dz = model.diagonal();

    let mut scaled = z0.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col /= dz[j];
    }
    let mut normalizers = &scaled * z0;
    for i in 0..n {
        for k in 0..n {
            let v = &mut normalizers[(i, k)];
            if i == k {
                *v = 0.0;
            } else if *v > 0.0 {
                *v = 1.0 / *v;
            } else {
                return Err(Error::numerical(format!(
                    "pair normalizer n_{i}{k} is zero; is the graph strongly connected?"
                )));
            }
        }
    }
    let left = z0.tr_mul(&normalizers);
    let values = (0..n)
        .map(|j| {
            let s: f64 = (0..n).map(|k| left[(j, k)] * z0[(j, k)]).sum();
            s / dz[j]
        })
        .collect();
    Ok(ScoreVector {
        values,
        kind: ScoreKind::Betweenness,
    })
}

fn check_mask(model: &BopModel, mask: &[bool], what: &str) -> Result<()> {
    if mask.len() != model.n() {
        return Err(Error::invalid(format!(
            "{what} mask has {} entries for {} nodes",
            mask.len(),
            model.n()
        )));
    }
    if !mask.iter().any(|&m| m) {
        return Err(Error::DegenerateClass {
            class: None,
            reason: format!("{what} set is empty"),
        });
    }
    Ok(())
}

fn to_indicator(mask: &[bool]) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_iterator(mask.len(), mask.iter().map(|&m| if m { 1.0 } else { 0.0 }))
}

fn normalized(mut values: Vec<f64>, what: &str) -> Result<ScoreVector> {
    // Cancellation in the within-class correction can leave -1e-17 where the
    // exact value is zero.
    values.iter_mut().for_each(|v| *v = v.max(0.0));
    let total: f64 = values.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::DegenerateClass {
            class: None,
            reason: format!("{what} has no path mass to normalize"),
        });
    }
    values.iter_mut().for_each(|v| *v /= total);
    Ok(ScoreVector {
        values,
        kind: ScoreKind::GroupBetweenness,
    })
}

/// Betweenness of each node between the disjoint node sets `from` and `to`:
/// `D_z^-1 ((Z0^T y_from) o (Z0 y_to))`, L1-normalized. Nodes of either set
/// score zero as intermediates between themselves and the other set only
/// through the masks; see the module docs.
pub fn group_betweenness(model: &BopModel, from: &[bool], to: &[bool]) -> Result<ScoreVector> {
    check_mask(model, from, "source")?;
    check_mask(model, to, "target")?;
    if let Some(node) = (0..from.len()).find(|&i| from[i] && to[i]) {
        return Err(Error::invalid(format!(
            "source and target sets overlap at node {node}"
        )));
    }
    let z0 = model.fundamental_offdiag();
    let dz = model.diagonal();
    let into = z0.tr_mul(&to_indicator(from));
    let out = z0 * to_indicator(to);
    let values = (0..model.n()).map(|j| into[j] * out[j] / dz[j]).collect();
    normalized(values, "group betweenness")
}

/// Betweenness of each node between members of a single class, start and
/// end distinct: `D_z^-1 [(Z0^T y) o (Z0 y) - (Z0^T o Z0) y]`,
/// L1-normalized. Classes with fewer than two members have no admissible
/// pairs and are reported as degenerate.
pub fn within_class_betweenness(model: &BopModel, class: &[bool]) -> Result<ScoreVector> {
    check_mask(model, class, "class")?;
    let members = class.iter().filter(|&&m| m).count();
    if members < 2 {
        return Err(Error::DegenerateClass {
            class: None,
            reason: format!("{members} labeled node(s), at least 2 required"),
        });
    }
    let z0 = model.fundamental_offdiag();
    let dz = model.diagonal();
    let y = to_indicator(class);
    let into = z0.tr_mul(&y);
    let out = z0 * &y;
    let same = model.z0t_hadamard_z0() * &y;
    let values = (0..model.n())
        .map(|j| (into[j] * out[j] - same[j]) / dz[j])
        .collect();
    normalized(values, "within-class betweenness")
}

/// Direct triple sums over node pairs, straight from the definitions.
pub mod direct {
    use super::*;

    pub fn bop_betweenness(model: &BopModel) -> Result<ScoreVector> {
        let n = model.n();
        let mut values = vec![0.0; n];
        for i in 0..n {
            for k in 0..n {
                if i == k {
                    continue;
                }
                let post = intermediate_posterior(model, i, k)?;
                for (v, p) in values.iter_mut().zip(&post.probs) {
                    *v += p;
                }
            }
        }
        Ok(ScoreVector {
            values,
            kind: ScoreKind::Betweenness,
        })
    }

    fn pair_sum(model: &BopModel, from: &[bool], to: &[bool]) -> Vec<f64> {
        let n = model.n();
        let z = model.fundamental();
        let dz = model.diagonal();
        (0..n)
            .map(|j| {
                let mut s = 0.0;
                for i in (0..n).filter(|&i| from[i] && i != j) {
                    for k in (0..n).filter(|&k| to[k] && k != j && k != i) {
                        s += z[(i, j)] * z[(j, k)];
                    }
                }
                s / dz[j]
            })
            .collect()
    }

    pub fn group_betweenness(model: &BopModel, from: &[bool], to: &[bool]) -> Result<ScoreVector> {
        normalized(pair_sum(model, from, to), "group betweenness")
    }

    pub fn within_class_betweenness(model: &BopModel, class: &[bool]) -> Result<ScoreVector> {
        normalized(pair_sum(model, class, class), "within-class betweenness")
    }
}
