//! Direct path sums, used to audit the closed-form fundamental matrix.
//!
//! The weight of a path is the product of its killed transition weights
//! `p_ref(i, j) * exp(-theta c_ij)`. The oracle walks path lengths
//! `0, 1, 2, ...` and, for each length, carries the total weight of all
//! paths from the source grouped by their current end node. Grouping by end
//! node keeps each length polynomial; no linear system is ever solved.

use crate::graph::{reference_transitions, Graph};
use crate::{Error, Result};

/// Largest graph the oracle accepts.
pub const ORACLE_MAX_NODES: usize = 12;

const MAX_LENGTH: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    /// Every path, loops and revisits of the target included.
    All,
    /// Paths that reach the target only at their last step.
    Hitting,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSumEstimate {
    /// Sum over all paths of length at most `truncation_length`.
    pub value: f64,
    pub truncation_length: usize,
    /// Upper bound on the weight of all longer paths.
    pub tail_bound: f64,
}

/// Sums the Boltzmann weights of paths from `source` to `target` until the
/// remaining tail is provably below `epsilon`.
///
/// With `rho` the largest row sum of the killed transition matrix, the
/// paths longer than `l` weigh at most `rho^(l+1) n / (1 - rho)`.
pub fn path_sum_oracle(
    graph: &Graph,
    theta: f64,
    source: usize,
    target: usize,
    epsilon: f64,
    kind: PathKind,
) -> Result<PathSumEstimate> {
    let n = graph.n();
    if n > ORACLE_MAX_NODES {
        return Err(Error::invalid(format!(
            "graph too large for oracle: {n} nodes, at most {ORACLE_MAX_NODES}"
        )));
    }
    super::check_theta(theta)?;
    if source >= n || target >= n {
        return Err(Error::invalid(format!("node out of range for {n} nodes")));
    }
    if !(epsilon > 0.0) {
        // The tail bound is strictly positive at every finite length.
        return Err(Error::numerical(format!(
            "path-sum tail cannot fall below epsilon = {epsilon}"
        )));
    }

    let p = reference_transitions(graph).into_matrix();
    let costs = graph.costs();
    // Arc list: (from, to, weight).
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if let Some(c) = costs.get(i, j) {
                arcs.push((i, j, p[(i, j)] * (-theta * c).exp()));
            }
        }
    }
    let rho = (0..n)
        .map(|i| arcs.iter().filter(|a| a.0 == i).map(|a| a.2).sum::<f64>())
        .fold(0.0, f64::max);
    assert!(rho < 1.0, "killed walk must be substochastic for theta > 0");
    let tail = |len: usize| rho.powi(len as i32 + 1) * n as f64 / (1.0 - rho);

    // frontier[k]: weight of length-`len` paths from source currently at k
    let mut frontier = vec![0.0; n];
    frontier[source] = 1.0;
    let mut value = frontier[target];
    if kind == PathKind::Hitting {
        frontier[target] = 0.0;
    }
    let mut len = 0;
    while tail(len) >= epsilon {
        if len >= MAX_LENGTH {
            return Err(Error::numerical("path-sum oracle did not converge"));
        }
        let mut next = vec![0.0; n];
        for &(from, to, w) in &arcs {
            next[to] += frontier[from] * w;
        }
        len += 1;
        value += next[target];
        if kind == PathKind::Hitting {
            next[target] = 0.0;
        }
        frontier = next;
    }
    Ok(PathSumEstimate {
        value,
        truncation_length: len,
        tail_bound: tail(len),
    })
}
