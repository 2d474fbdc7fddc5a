use nalgebra::DMatrix;
use rand::Rng;

use crate::graph::Graph;

/// Random strongly connected digraph: a random Hamiltonian cycle plus
/// extra arcs, affinities in [0.2, 3).
pub(crate) fn random_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let mut a = DMatrix::from_fn(n, n, |i, j| {
        if i != j && rng.gen::<f64>() < 0.35 {
            rng.gen_range(0.2..3.0)
        } else {
            0.0
        }
    });
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    for k in 0..n {
        a[(order[k], order[(k + 1) % n])] = rng.gen_range(0.2..3.0);
    }
    Graph::from_affinity(a, true).unwrap()
}

/// Undirected path 0 - 1 - ... - (n-1) with unit weights.
pub(crate) fn path_graph(n: usize) -> Graph {
    let a = DMatrix::from_fn(n, n, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 });
    Graph::from_affinity(a, false).unwrap()
}
