//! Synthetic graphs with planted class structure.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_strongly_connected, Graph, LabelAssignment};
use crate::{Error, Result};

const MAX_ATTEMPTS: usize = 100;

/// Undirected unit-affinity planted partition: `blocks` blocks of
/// `block_size` nodes, edges drawn independently with probability `p_in`
/// inside a block and `p_out` across blocks. Node `i` belongs to block
/// `i / block_size`.
pub fn planted_partition(
    blocks: usize,
    block_size: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<(Graph, LabelAssignment)> {
    planted_partition_with_sizes(&vec![block_size; blocks], p_in, p_out, seed)
}

/// Like [`planted_partition`] with per-block sizes. Blocks are laid out
/// contiguously in the given order.
///
/// Samples are redrawn from the same seeded stream until the graph is
/// connected, up to a fixed number of attempts.
pub fn planted_partition_with_sizes(
    sizes: &[usize],
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<(Graph, LabelAssignment)> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::invalid("every block needs at least one node"));
    }
    if !(0.0 <= p_out && p_out < p_in && p_in <= 1.0) {
        return Err(Error::invalid(format!(
            "need 0 <= p_out < p_in <= 1, got p_in = {p_in}, p_out = {p_out}"
        )));
    }
    let block_of: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| std::iter::repeat(b).take(s))
        .collect();
    let n = block_of.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut a = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let p = if block_of[i] == block_of[j] { p_in } else { p_out };
                if rng.gen::<f64>() < p {
                    a[(i, j)] = 1.0;
                    a[(j, i)] = 1.0;
                }
            }
        }
        if is_strongly_connected(&a) {
            let graph = Graph::from_affinity(a, false)?;
            let labels = LabelAssignment::complete(block_of, sizes.len())?;
            return Ok((graph, labels));
        }
    }
    Err(Error::invalid(format!(
        "no connected sample after {MAX_ATTEMPTS} attempts (p_in = {p_in}, p_out = {p_out})"
    )))
}

/// Two `clique_size`-cliques joined by a single edge between the last node
/// of the first clique and the first node of the second. Fully labeled by
/// clique.
pub fn two_clique_fixture(clique_size: usize) -> Result<(Graph, LabelAssignment)> {
    if clique_size < 2 {
        return Err(Error::invalid("cliques need at least two nodes"));
    }
    let n = 2 * clique_size;
    let clique = |i: usize| i / clique_size;
    let mut a = DMatrix::from_fn(n, n, |i, j| {
        if i != j && clique(i) == clique(j) {
            1.0
        } else {
            0.0
        }
    });
    a[(clique_size - 1, clique_size)] = 1.0;
    a[(clique_size, clique_size - 1)] = 1.0;
    let graph = Graph::from_affinity(a, false)?;
    let labels = LabelAssignment::complete((0..n).map(clique).collect(), 2)?;
    Ok((graph, labels))
}
