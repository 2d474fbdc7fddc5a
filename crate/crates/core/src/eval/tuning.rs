//! Hyperparameter selection by cross-validation on the visible labels.

use log::warn;
use rand::Rng;

use super::masking::{inner_folds, MIN_SEEDS_PER_CLASS};
use crate::classify::{ClassifierSpec, Method, Prepared};
use crate::graph::{Graph, LabelAssignment};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tuned {
    /// `None` for parameterless methods.
    pub parameter: Option<f64>,
    /// Mean held-out accuracy of the chosen value; `None` when no
    /// cross-validation was needed.
    pub inner_accuracy: Option<f64>,
}

impl Tuned {
    pub fn spec(&self, method: Method) -> Result<ClassifierSpec> {
        ClassifierSpec::new(method, self.parameter)
    }
}

/// Picks the grid value with the best mean accuracy over `k` folds of the
/// labeled nodes of `train`. Each fold is hidden in turn and predicted from
/// the others. Ties go to the smallest value.
///
/// Folds that would leave a class with fewer than two visible labels are
/// skipped, as are grid values the method cannot be fitted with. An empty or
/// single-value grid is returned without any fitting.
pub fn nested_cv_tune<R: Rng + ?Sized>(
    method: Method,
    grid: &[f64],
    graph: &Graph,
    train: &LabelAssignment,
    k: usize,
    rng: &mut R,
) -> Result<Tuned> {
    if k < 2 {
        return Err(Error::invalid(format!("need at least 2 folds, got {k}")));
    }
    match (method.takes_parameter(), grid) {
        (false, []) => {
            return Ok(Tuned {
                parameter: None,
                inner_accuracy: None,
            })
        }
        (false, _) => return Err(Error::invalid(format!("{method} takes no parameter"))),
        (true, []) => return Err(Error::invalid(format!("empty grid for {method}"))),
        (true, [only]) => {
            ClassifierSpec::new(method, Some(*only))?;
            return Ok(Tuned {
                parameter: Some(*only),
                inner_accuracy: None,
            });
        }
        (true, _) => {}
    }
    let mut grid = grid.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();

    let folds: Vec<(LabelAssignment, Vec<usize>)> = inner_folds(&train.labeled_nodes(), k, rng)
        .into_iter()
        .filter_map(|held_out| {
            let visible: Vec<usize> = train
                .labeled_nodes()
                .into_iter()
                .filter(|i| held_out.binary_search(i).is_err())
                .collect();
            let labels = train.restricted_to(&visible);
            if labels.require_min_seeds(MIN_SEEDS_PER_CLASS).is_err() {
                warn!("{method}: skipping a fold that leaves a class with fewer than {MIN_SEEDS_PER_CLASS} labels");
                return None;
            }
            Some((labels, held_out))
        })
        .collect();
    if folds.is_empty() {
        return Err(Error::DegenerateClass {
            class: None,
            reason: format!("every cross-validation fold for {method} leaves a class with fewer than {MIN_SEEDS_PER_CLASS} labels"),
        });
    }

    let mut best: Option<(f64, f64)> = None;
    for &value in &grid {
        match mean_accuracy(method, value, graph, train, &folds) {
            Ok(acc) => {
                if best.map_or(true, |(_, b)| acc > b) {
                    best = Some((value, acc));
                }
            }
            Err(e) => warn!("{method}: skipping grid value {value}: {e}"),
        }
    }
    let (value, acc) = best.ok_or_else(|| {
        Error::numerical(format!("{method}: no grid value could be fitted"))
    })?;
    Ok(Tuned {
        parameter: Some(value),
        inner_accuracy: Some(acc),
    })
}

fn mean_accuracy(
    method: Method,
    value: f64,
    graph: &Graph,
    truth: &LabelAssignment,
    folds: &[(LabelAssignment, Vec<usize>)],
) -> Result<f64> {
    let spec = ClassifierSpec::new(method, Some(value))?;
    let prepared = Prepared::new(graph, &spec)?;
    let mut total = 0.0;
    for (labels, held_out) in folds {
        let prediction = prepared.classify(labels)?;
        total += prediction.accuracy(truth, held_out).unwrap();
    }
    Ok(total / folds.len() as f64)
}
