//! Graphs, labels, and the quantities derived from them before any path
//! model is built.
//!
//! Graphs are dense: every method downstream needs a dense inverse, and the
//! target scale is around a thousand nodes. A missing arc has zero affinity
//! and no cost at all (see [`CostMatrix::get`]); it is never stored as a
//! large finite number.

mod generate;
mod io;
mod labels;

use std::collections::VecDeque;

use nalgebra::DMatrix;

use crate::{Error, Result};

pub use generate::{planted_partition, planted_partition_with_sizes, two_clique_fixture};
pub use io::{load_edge_list, load_labels, parse_edge_list, parse_labels, write_edge_list, write_labels};
pub use labels::LabelAssignment;

/// Immediate arc costs. `None` marks an absent arc.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    entries: Vec<Option<f64>>,
}

impl CostMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.entries[i * self.n + j]
    }

    /// Multiplies every finite cost by `gamma`.
    pub fn scaled(&self, gamma: f64) -> CostMatrix {
        CostMatrix {
            n: self.n,
            entries: self.entries.iter().map(|c| c.map(|c| c * gamma)).collect(),
        }
    }

    /// Builds a cost matrix from `(i, j) -> Option<cost>`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Option<f64>) -> CostMatrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        CostMatrix { n, entries }
    }
}

/// Costs are the reciprocal affinities; zero affinity means no arc.
pub fn affinity_to_cost(affinity: &DMatrix<f64>) -> CostMatrix {
    CostMatrix::from_fn(affinity.nrows(), |i, j| {
        let a = affinity[(i, j)];
        (a > 0.0).then(|| 1.0 / a)
    })
}

/// Row-stochastic reference transition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix(DMatrix<f64>);

impl TransitionMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    affinity: DMatrix<f64>,
    costs: CostMatrix,
    directed: bool,
    node_names: Option<Vec<String>>,
}

impl Graph {
    /// Graph whose costs are the reciprocal affinities.
    ///
    /// The affinity matrix must be square, nonnegative and finite with an
    /// empty diagonal, and must describe a strongly connected graph. When
    /// `directed` is false it must also be symmetric.
    pub fn from_affinity(affinity: DMatrix<f64>, directed: bool) -> Result<Graph> {
        let costs = affinity_to_cost(&affinity);
        Graph::with_costs(affinity, costs, directed)
    }

    /// Graph with explicitly supplied costs. A cost must be present and
    /// positive exactly where the affinity is positive.
    pub fn with_costs(affinity: DMatrix<f64>, costs: CostMatrix, directed: bool) -> Result<Graph> {
        let n = affinity.nrows();
        if n == 0 || affinity.ncols() != n {
            return Err(Error::invalid(format!(
                "affinity matrix must be square and nonempty, got {}x{}",
                affinity.nrows(),
                affinity.ncols()
            )));
        }
        if costs.n() != n {
            return Err(Error::invalid("cost and affinity matrices differ in size"));
        }
        for i in 0..n {
            for j in 0..n {
                let a = affinity[(i, j)];
                if !a.is_finite() || a < 0.0 {
                    return Err(Error::invalid(format!(
                        "affinity ({i}, {j}) = {a} must be finite and nonnegative"
                    )));
                }
                if i == j && a != 0.0 {
                    return Err(Error::invalid(format!("self-loop on node {i} is not allowed")));
                }
                match costs.get(i, j) {
                    Some(c) if a > 0.0 && c.is_finite() && c > 0.0 => {}
                    None if a == 0.0 => {}
                    Some(c) => {
                        return Err(Error::invalid(format!(
                            "cost ({i}, {j}) = {c} is inconsistent with affinity {a}"
                        )))
                    }
                    None => {
                        return Err(Error::invalid(format!(
                            "arc ({i}, {j}) has affinity {a} but no cost"
                        )))
                    }
                }
                if !directed && affinity[(j, i)] != a {
                    return Err(Error::invalid(format!(
                        "undirected graph has asymmetric affinity at ({i}, {j})"
                    )));
                }
            }
        }
        if let Some(node) = first_unreachable(&affinity) {
            return Err(Error::NotStronglyConnected(format!(
                "node {node} cannot reach or cannot be reached from node 0"
            )));
        }
        Ok(Graph {
            affinity,
            costs,
            directed,
            node_names: None,
        })
    }

    pub fn n(&self) -> usize {
        self.affinity.nrows()
    }

    pub fn affinity(&self) -> &DMatrix<f64> {
        &self.affinity
    }

    pub fn costs(&self) -> &CostMatrix {
        &self.costs
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.costs.get(i, j).is_some()
    }

    pub fn node_names(&self) -> Option<&[String]> {
        self.node_names.as_deref()
    }

    /// Attaches display names; they play no part in any computation.
    pub fn with_node_names(mut self, names: Vec<String>) -> Result<Graph> {
        if names.len() != self.n() {
            return Err(Error::invalid(format!(
                "{} node names for {} nodes",
                names.len(),
                self.n()
            )));
        }
        self.node_names = Some(names);
        Ok(self)
    }

    /// Same graph with every cost multiplied by `gamma > 0`.
    pub fn with_scaled_costs(&self, gamma: f64) -> Result<Graph> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::invalid("cost scale must be positive"));
        }
        Ok(Graph {
            costs: self.costs.scaled(gamma),
            ..self.clone()
        })
    }

    /// Relabels nodes so that old node `i` becomes node `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        check_permutation(perm, n)?;
        let mut affinity = DMatrix::zeros(n, n);
        let mut entries = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                affinity[(perm[i], perm[j])] = self.affinity[(i, j)];
                entries[perm[i] * n + perm[j]] = self.costs.get(i, j);
            }
        }
        let node_names = self.node_names.as_ref().map(|names| {
            let mut out = vec![String::new(); n];
            for (i, name) in names.iter().enumerate() {
                out[perm[i]] = name.clone();
            }
            out
        });
        Ok(Graph {
            affinity,
            costs: CostMatrix { n, entries },
            directed: self.directed,
            node_names,
        })
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::invalid("permutation has the wrong length"));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::invalid("not a permutation"));
        }
    }
    Ok(())
}

/// Reference random walk: leave node `i` along arc `(i, j)`
/// with probability proportional to `1 / c_ij`.
pub fn reference_transitions(graph: &Graph) -> TransitionMatrix {
    let n = graph.n();
    let costs = graph.costs();
    let mut p = DMatrix::zeros(n, n);
    for i in 0..n {
        let total: f64 = (0..n).filter_map(|j| costs.get(i, j)).map(|c| 1.0 / c).sum();
        for j in 0..n {
            if let Some(c) = costs.get(i, j) {
                p[(i, j)] = (1.0 / c) / total;
            }
        }
    }
    TransitionMatrix(p)
}

/// Returns a node that is not mutually reachable with node 0, if any.
fn first_unreachable(affinity: &DMatrix<f64>) -> Option<usize> {
    let n = affinity.nrows();
    let forward = reachable_from(n, 0, |i, j| affinity[(i, j)] > 0.0);
    let backward = reachable_from(n, 0, |i, j| affinity[(j, i)] > 0.0);
    (0..n).find(|&v| !forward[v] || !backward[v])
}

fn reachable_from(n: usize, start: usize, arc: impl Fn(usize, usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if !seen[v] && arc(u, v) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Whether every node can reach every other node along positive-affinity arcs.
pub fn is_strongly_connected(affinity: &DMatrix<f64>) -> bool {
    affinity.nrows() > 0 && first_unreachable(affinity).is_none()
}
