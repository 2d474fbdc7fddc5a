use std::time::Instant;

use crate::classify::{classify, ClassifierSpec};
use crate::graph::{Graph, LabelAssignment};
use crate::{Error, Result};

/// Mean wall-clock seconds of a full [`classify`] call, model construction
/// included, over `repetitions` runs.
pub fn time_method(
    spec: &ClassifierSpec,
    graph: &Graph,
    labels: &LabelAssignment,
    repetitions: usize,
) -> Result<f64> {
    if repetitions == 0 {
        return Err(Error::invalid("at least one repetition is needed"));
    }
    let mut total = 0.0;
    for _ in 0..repetitions {
        let start = Instant::now();
        let prediction = classify(graph, labels, spec)?;
        total += start.elapsed().as_secs_f64();
        std::hint::black_box(prediction);
    }
    Ok(total / repetitions as f64)
}
