//! Label masking and fold construction.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::LabelAssignment;
use crate::{Error, Result};

/// Every class keeps at least this many labeled nodes after masking.
pub const MIN_SEEDS_PER_CLASS: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct Masked {
    /// The labels that stay visible.
    pub train: LabelAssignment,
    /// Labeled nodes whose label was hidden, in increasing order.
    pub test: Vec<usize>,
}

/// Keeps `ceil(rate * L)` of the `L` labeled nodes of `truth`, stratified by
/// class, and hides the others.
///
/// Per-class quotas are `rate * size` rounded by the largest-remainder rule
/// (ties to the lower class), then are raised to [`MIN_SEEDS_PER_CLASS`] at the expense of the
/// classes furthest above their proportional share. The kept nodes of each
/// class are drawn uniformly from `rng`.
pub fn mask_labels<R: Rng + ?Sized>(truth: &LabelAssignment, rate: f64, rng: &mut R) -> Result<Masked> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::invalid(format!("labeling rate must be in (0, 1], got {rate}")));
    }
    let m = truth.num_classes();
    let sizes = truth.seed_counts();
    let total: usize = sizes.iter().sum();
    // The small slack keeps 0.3 * 10 from rounding up to 4.
    let budget = ((rate * total as f64) - 1e-9).ceil().max(0.0) as usize;
    let budget = budget.min(total);

    if let Some(c) = sizes.iter().position(|&s| s < MIN_SEEDS_PER_CLASS) {
        return Err(Error::DegenerateClass {
            class: Some(c),
            reason: format!("{} labeled node(s), cannot keep {MIN_SEEDS_PER_CLASS}", sizes[c]),
        });
    }
    if budget < MIN_SEEDS_PER_CLASS * m {
        return Err(Error::DegenerateClass {
            class: None,
            reason: format!(
                "rate {rate} keeps {budget} of {total} labels, fewer than {MIN_SEEDS_PER_CLASS} per class for {m} classes"
            ),
        });
    }

    let ideal: Vec<f64> = sizes.iter().map(|&s| rate * s as f64).collect();
    let mut quota: Vec<usize> = ideal.iter().map(|v| v.floor() as usize).collect();
    let mut by_remainder: Vec<usize> = (0..m).collect();
    by_remainder.sort_by(|&a, &b| {
        let ra = ideal[a] - ideal[a].floor();
        let rb = ideal[b] - ideal[b].floor();
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    let assigned: usize = quota.iter().sum();
    // At most one extra node per class, as the leftover never exceeds m.
    for &c in by_remainder.iter().take(budget.saturating_sub(assigned)) {
        quota[c] = (quota[c] + 1).min(sizes[c]);
    }
    while quota.iter().sum::<usize>() < budget {
        // Only reachable through rounding in `rate * size`.
        let c = (0..m)
            .filter(|&c| quota[c] < sizes[c])
            .max_by(|&a, &b| {
                let da = ideal[a] - quota[a] as f64;
                let db = ideal[b] - quota[b] as f64;
                da.partial_cmp(&db).unwrap().then(b.cmp(&a))
            })
            .unwrap();
        quota[c] += 1;
    }
    for q in quota.iter_mut() {
        *q = (*q).max(MIN_SEEDS_PER_CLASS);
    }
    while quota.iter().sum::<usize>() > budget {
        // budget >= 2m guarantees a donor exists
        let donor = (0..m)
            .filter(|&c| quota[c] > MIN_SEEDS_PER_CLASS)
            .max_by(|&a, &b| {
                let ea = quota[a] as f64 - ideal[a];
                let eb = quota[b] as f64 - ideal[b];
                ea.partial_cmp(&eb).unwrap().then(b.cmp(&a))
            })
            .unwrap();
        quota[donor] -= 1;
    }

    let mut keep = Vec::with_capacity(budget);
    for (c, &q) in quota.iter().enumerate() {
        let mut members = truth.members(c);
        members.shuffle(rng);
        keep.extend_from_slice(&members[..q]);
    }
    keep.sort_unstable();
    let train = truth.restricted_to(&keep);
    let test = truth
        .labeled_nodes()
        .into_iter()
        .filter(|i| keep.binary_search(i).is_err())
        .collect();
    Ok(Masked { train, test })
}

/// Splits `nodes` into `k` folds after a seeded shuffle; fold `f` holds the
/// shuffled positions congruent to `f` mod `k`. With fewer nodes than `k`,
/// one fold per node.
pub fn inner_folds<R: Rng + ?Sized>(nodes: &[usize], k: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let k = k.min(nodes.len()).max(1);
    let mut order = nodes.to_vec();
    order.shuffle(rng);
    let mut folds = vec![Vec::new(); k];
    for (pos, node) in order.into_iter().enumerate() {
        folds[pos % k].push(node);
    }
    for f in folds.iter_mut() {
        f.sort_unstable();
    }
    folds
}
