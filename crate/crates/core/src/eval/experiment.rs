//! The full protocol: for every labeling rate and run, hide labels, tune
//! each method on the visible ones, classify, and score the hidden ones.

use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::masking::mask_labels;
use super::tuning::nested_cv_tune;
use crate::classify::{Method, Prepared};
use crate::graph::{Graph, LabelAssignment};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodConfig {
    pub method: Method,
    /// Candidate values; empty for parameterless methods.
    pub grid: Vec<f64>,
}

impl MethodConfig {
    pub fn with_default_grid(method: Method) -> MethodConfig {
        MethodConfig {
            method,
            grid: method.default_grid(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub labeling_rates: Vec<f64>,
    pub runs: usize,
    /// Validated and recorded; the repeated masking runs play the role of
    /// the outer level, so it does not change the computation.
    pub outer_folds: usize,
    pub inner_folds: usize,
    pub methods: Vec<MethodConfig>,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            labeling_rates: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            runs: 20,
            outer_folds: 10,
            inner_folds: 10,
            methods: Method::ALL.into_iter().map(MethodConfig::with_default_grid).collect(),
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.labeling_rates.is_empty() {
            return Err(Error::invalid("no labeling rates given"));
        }
        if let Some(r) = self.labeling_rates.iter().find(|&&r| !(r > 0.0 && r <= 1.0)) {
            return Err(Error::invalid(format!("labeling rate must be in (0, 1], got {r}")));
        }
        if self.runs < 1 {
            return Err(Error::invalid("runs must be at least 1"));
        }
        if self.outer_folds < 2 || self.inner_folds < 2 {
            return Err(Error::invalid("fold counts must be at least 2"));
        }
        if self.methods.is_empty() {
            return Err(Error::invalid("no methods given"));
        }
        if self.methods.len() > 255 {
            return Err(Error::invalid("at most 255 methods per experiment"));
        }
        for mc in &self.methods {
            if mc.method.takes_parameter() && mc.grid.is_empty() {
                return Err(Error::invalid(format!("empty grid for {}", mc.method)));
            }
            if !mc.method.takes_parameter() && !mc.grid.is_empty() {
                return Err(Error::invalid(format!("{} takes no parameter", mc.method)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub method: Method,
    pub rate: f64,
    pub run: usize,
    /// Accuracy on the hidden labels; `None` when nothing was hidden.
    pub accuracy: Option<f64>,
    pub parameter: Option<f64>,
    pub inner_accuracy: Option<f64>,
    /// Wall time of the final fit and prediction. Not serialized, so that
    /// reports of identical runs are byte-identical.
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub method: Method,
    pub rate: f64,
    /// Mean over the runs that had hidden labels.
    pub mean_accuracy: Option<f64>,
    pub scored_runs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    /// Ordered by rate, then run, then method.
    pub cells: Vec<Cell>,
    /// Ordered by method, then rate.
    pub aggregates: Vec<Aggregate>,
}

impl ExperimentReport {
    pub fn mean_accuracy(&self, method: Method, rate: f64) -> Option<f64> {
        self.aggregates
            .iter()
            .find(|a| a.method == method && a.rate == rate)
            .and_then(|a| a.mean_accuracy)
    }

    /// Per-run accuracies of one method at one rate, in run order.
    pub fn accuracies(&self, method: Method, rate: f64) -> Vec<Option<f64>> {
        self.cells
            .iter()
            .filter(|c| c.method == method && c.rate == rate)
            .map(|c| c.accuracy)
            .collect()
    }

    /// Method-by-rate table of mean accuracies; empty fields for rates
    /// without hidden labels.
    pub fn accuracy_csv(&self, fmt_float: impl Fn(f64) -> String) -> String {
        let mut out = String::from("method");
        for &r in &self.config.labeling_rates {
            write!(out, ",{}", fmt_float(r)).unwrap();
        }
        out.push('\n');
        for mc in &self.config.methods {
            out.push_str(mc.method.name());
            for &r in &self.config.labeling_rates {
                out.push(',');
                if let Some(v) = self.mean_accuracy(mc.method, r) {
                    out.push_str(&fmt_float(v));
                }
            }
            out.push('\n');
        }
        out
    }

    /// Mean wall time per method and rate.
    pub fn timing_csv(&self, fmt_float: impl Fn(f64) -> String) -> String {
        let mut out = String::from("method,rate,mean_seconds\n");
        for mc in &self.config.methods {
            for &r in &self.config.labeling_rates {
                let times: Vec<f64> = self
                    .cells
                    .iter()
                    .filter(|c| c.method == mc.method && c.rate == r)
                    .map(|c| c.seconds)
                    .collect();
                let mean = times.iter().sum::<f64>() / times.len() as f64;
                writeln!(out, "{},{},{}", mc.method, fmt_float(r), fmt_float(mean)).unwrap();
            }
        }
        out
    }
}

/// Random stream of one (rate, run, slot) triple; slot 0 masks, slot
/// `1 + i` tunes method `i`.
fn cell_rng(seed: u64, rate_idx: usize, run: usize, slot: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((rate_idx as u64) << 40) | ((run as u64) << 8) | slot as u64);
    rng
}

fn run_cell(
    graph: &Graph,
    truth: &LabelAssignment,
    config: &ExperimentConfig,
    rate_idx: usize,
    run: usize,
) -> Result<Vec<Cell>> {
    let rate = config.labeling_rates[rate_idx];
    let context = |e: Error| -> Error {
        let msg = format!("rate {rate}, run {run}: {e}");
        match e {
            Error::DegenerateClass { class, .. } => Error::DegenerateClass { class, reason: msg },
            Error::Numerical(_) => Error::Numerical(msg),
            _ => Error::InvalidInput(msg),
        }
    };
    let masked = mask_labels(truth, rate, &mut cell_rng(config.seed, rate_idx, run, 0)).map_err(context)?;
    let mut cells = Vec::with_capacity(config.methods.len());
    for (i, mc) in config.methods.iter().enumerate() {
        let mut rng = cell_rng(config.seed, rate_idx, run, i + 1);
        let tuned = nested_cv_tune(mc.method, &mc.grid, graph, &masked.train, config.inner_folds, &mut rng)
            .map_err(|e| context(e))?;
        let spec = tuned.spec(mc.method).map_err(context)?;
        let start = Instant::now();
        let prediction = Prepared::new(graph, &spec)
            .and_then(|p| p.classify(&masked.train))
            .map_err(|e| context(e))?;
        let seconds = start.elapsed().as_secs_f64();
        cells.push(Cell {
            method: mc.method,
            rate,
            run,
            accuracy: prediction.accuracy(truth, &masked.test),
            parameter: tuned.parameter,
            inner_accuracy: tuned.inner_accuracy,
            seconds,
        });
    }
    Ok(cells)
}

/// Runs the protocol on `jobs` threads. Every (rate, run) pair draws from
/// its own random stream, so the report does not depend on `jobs`.
pub fn run_experiment(
    graph: &Graph,
    truth: &LabelAssignment,
    config: &ExperimentConfig,
    jobs: usize,
) -> Result<ExperimentReport> {
    config.validate()?;
    if truth.n() != graph.n() {
        return Err(Error::invalid(format!(
            "label assignment covers {} nodes, graph has {}",
            truth.n(),
            graph.n()
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..config.labeling_rates.len())
        .flat_map(|r| (0..config.runs).map(move |k| (r, k)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let results: Vec<Result<Vec<Cell>>> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(r, k)| run_cell(graph, truth, config, r, k))
            .collect()
    });
    let mut cells = Vec::with_capacity(pairs.len() * config.methods.len());
    for r in results {
        cells.extend(r?);
    }

    let mut aggregates = Vec::new();
    for mc in &config.methods {
        for &rate in &config.labeling_rates {
            let scored: Vec<f64> = cells
                .iter()
                .filter(|c| c.method == mc.method && c.rate == rate)
                .filter_map(|c| c.accuracy)
                .collect();
            aggregates.push(Aggregate {
                method: mc.method,
                rate,
                mean_accuracy: (!scored.is_empty())
                    .then(|| scored.iter().sum::<f64>() / scored.len() as f64),
                scored_runs: scored.len(),
            });
        }
    }
    Ok(ExperimentReport {
        config: config.clone(),
        cells,
        aggregates,
    })
}
