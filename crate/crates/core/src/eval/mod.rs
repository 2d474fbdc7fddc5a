//! Evaluation protocol: label masking, cross-validated tuning, repeated
//! runs, paired t-tests, Borda ranking and timing.

mod experiment;
mod masking;
mod stats;
mod timing;
mod tuning;

pub use experiment::{run_experiment, Aggregate, Cell, ExperimentConfig, ExperimentReport, MethodConfig};
pub use masking::{inner_folds, mask_labels, Masked, MIN_SEEDS_PER_CLASS};
pub use stats::{borda_ranking, paired_t_test_one_sided};
pub use timing::time_method;
pub use tuning::{nested_cv_tune, Tuned};
