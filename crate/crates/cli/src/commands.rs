use std::fmt::Write as _;
use std::path::Path;

use bop_core::betweenness::{bop_betweenness, group_betweenness, within_class_betweenness, ScoreVector};
use bop_core::bop::{hitting_probabilities, path_sum_oracle, BopModel, PathKind};
use bop_core::classify::{classify as run_classifier, ClassifierSpec, Method, Prediction};
use bop_core::eval::{nested_cv_tune, run_experiment, ExperimentConfig, MethodConfig};
use bop_core::graph::{load_edge_list, load_labels, planted_partition, write_edge_list, write_labels, Graph, LabelAssignment};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{CliError, EXIT_DEGENERATE};
use crate::output::{emit, fmt_g, round_g, write_file, Format};
use crate::{BenchmarkArgs, BetArgs, ClassifyArgs, GenerateArgs, GraphArgs, OracleArgs};

fn load_graph(args: &GraphArgs) -> Result<Graph, CliError> {
    Ok(load_edge_list(&args.edges, !args.undirected)?)
}

fn load_truth(path: &Path, graph: &Graph) -> Result<LabelAssignment, CliError> {
    Ok(load_labels(path, graph.n(), None)?)
}

fn check_class(labels: &LabelAssignment, class: usize) -> Result<(), CliError> {
    if class >= labels.num_classes() {
        return Err(CliError::input(format!(
            "class {class} out of range; the labels define {} classes",
            labels.num_classes()
        )));
    }
    Ok(())
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::input(format!("invalid {what} `{s}`"))))
        .collect()
}

fn parse_methods(text: &str) -> Result<Vec<Method>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Method>().map_err(CliError::from))
        .collect()
}

/// Rounds every non-integer number in `v` to the printed precision.
fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(round_g(n.as_f64().unwrap())),
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn to_json_text(v: Value) -> String {
    let mut text = serde_json::to_string_pretty(&round_json(v)).expect("serializable");
    text.push('\n');
    text
}

fn scores_csv(scores: &ScoreVector) -> String {
    let mut out = String::from("node,score\n");
    for (i, v) in scores.values.iter().enumerate() {
        writeln!(out, "{i},{}", fmt_g(*v)).unwrap();
    }
    out
}

pub fn bet(args: BetArgs) -> Result<(), CliError> {
    let graph = load_graph(&args.graph)?;
    let model = BopModel::build(&graph, args.theta)?;
    let (scores, description) = match (&args.labels, args.class) {
        (None, None) => (bop_betweenness(&model)?, "betweenness".to_string()),
        (None, Some(_)) => return Err(CliError::input("--class needs --labels")),
        (Some(_), None) => return Err(CliError::input("--labels needs --class")),
        (Some(path), Some(c)) => {
            let labels = load_truth(path, &graph)?;
            check_class(&labels, c)?;
            let name_class = |e: bop_core::Error, class: usize| -> CliError {
                let mut err = CliError::from(e);
                if err.code == EXIT_DEGENERATE {
                    err.message = format!("class {class}: {}", err.message);
                }
                err
            };
            match args.to_class {
                None => (
                    within_class_betweenness(&model, &labels.mask(c)).map_err(|e| name_class(e, c))?,
                    format!("within-class betweenness of class {c}"),
                ),
                Some(k) => {
                    check_class(&labels, k)?;
                    if k == c {
                        return Err(CliError::input("--to-class must differ from --class"));
                    }
                    (
                        group_betweenness(&model, &labels.mask(c), &labels.mask(k))?,
                        format!("group betweenness from class {c} to class {k}"),
                    )
                }
            }
        }
    };
    let text = match args.format {
        Format::Csv => scores_csv(&scores),
        Format::Json => to_json_text(json!({
            "measure": description,
            "theta": args.theta,
            "scores": scores.values,
        })),
    };
    emit(args.out.as_deref(), &text)
}

fn prediction_json(spec: &ClassifierSpec, tuned: bool, inner: Option<f64>, p: &Prediction) -> Value {
    let scores: Vec<Vec<f64>> = p.scores.row_iter().map(|r| r.iter().copied().collect()).collect();
    json!({
        "method": spec.method().name(),
        "parameter": spec.parameter(),
        "tuned": tuned,
        "inner_accuracy": inner,
        "labels": p.labels,
        "scores": scores,
    })
}

pub fn classify(args: ClassifyArgs) -> Result<(), CliError> {
    let method: Method = args.method.parse()?;
    if args.theta.is_some() && method != Method::Bop {
        return Err(CliError::input(format!("--theta applies to BOP only; use --param for {method}")));
    }
    let graph = load_graph(&args.graph)?;
    let labels = load_truth(&args.labels, &graph)?;
    let (spec, tuned, inner) = match &args.grid {
        Some(grid) => {
            let values = if grid.trim() == "default" {
                method.default_grid()
            } else {
                parse_list::<f64>(grid, "grid value")?
            };
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let t = nested_cv_tune(method, &values, &graph, &labels, args.inner_folds, &mut rng)?;
            (t.spec(method)?, true, t.inner_accuracy)
        }
        None => (ClassifierSpec::new(method, args.param.or(args.theta))?, false, None),
    };
    let prediction = run_classifier(&graph, &labels, &spec)?;
    let text = match args.format {
        Format::Csv => {
            let mut out = String::from("node,label\n");
            for (i, l) in prediction.labels.iter().enumerate() {
                writeln!(out, "{i},{l}").unwrap();
            }
            out
        }
        Format::Json => to_json_text(prediction_json(&spec, tuned, inner, &prediction)),
    };
    if tuned {
        log::info!("selected {spec}");
    }
    emit(args.out.as_deref(), &text)
}

pub fn benchmark(args: BenchmarkArgs) -> Result<(), CliError> {
    let methods = match &args.methods {
        Some(text) => parse_methods(text)?,
        None => Method::ALL.to_vec(),
    };
    let config = ExperimentConfig {
        labeling_rates: parse_list(&args.rates, "labeling rate")?,
        runs: args.runs,
        outer_folds: args.outer_folds,
        inner_folds: args.inner_folds,
        methods: methods.into_iter().map(MethodConfig::with_default_grid).collect(),
        seed: args.seed,
    };
    config.validate()?;
    if args.jobs == 0 {
        return Err(CliError::input("--jobs must be at least 1"));
    }
    let graph = load_graph(&args.graph)?;
    let truth = load_truth(&args.labels, &graph)?;
    let report = run_experiment(&graph, &truth, &config, args.jobs)?;

    std::fs::create_dir_all(&args.out)
        .map_err(|e| CliError::input(format!("{}: {e}", args.out.display())))?;
    let value = serde_json::to_value(&report).expect("serializable");
    write_file(&args.out.join("report.json"), &to_json_text(value))?;
    let accuracy = report.accuracy_csv(fmt_g);
    write_file(&args.out.join("accuracy.csv"), &accuracy)?;
    write_file(&args.out.join("timing.csv"), &report.timing_csv(fmt_g))?;
    emit(None, &accuracy)
}

pub fn oracle_check(args: OracleArgs) -> Result<(), CliError> {
    let graph = load_graph(&args.graph)?;
    let n = graph.n();
    if n > args.max_n {
        return Err(CliError::input(format!(
            "graph too large for oracle: {n} nodes, --max-n is {}",
            args.max_n
        )));
    }
    let model = BopModel::build(&graph, args.theta)?;
    let zh = hitting_probabilities(&model).zh;
    let mut worst_all: f64 = 0.0;
    let mut worst_hit: f64 = 0.0;
    let mut failures = 0;
    for i in 0..n {
        for j in 0..n {
            for (kind, closed) in [(PathKind::All, model.fundamental()[(i, j)]), (PathKind::Hitting, zh[(i, j)])] {
                let est = path_sum_oracle(&graph, args.theta, i, j, args.epsilon, kind)?;
                let diff = (closed - est.value).abs();
                if diff > args.epsilon + est.tail_bound {
                    failures += 1;
                }
                match kind {
                    PathKind::All => worst_all = worst_all.max(diff),
                    PathKind::Hitting => worst_hit = worst_hit.max(diff),
                }
            }
        }
    }
    let mut report = String::new();
    writeln!(report, "pairs\t{}", n * n).unwrap();
    writeln!(report, "max_abs_diff_z\t{}", fmt_g(worst_all)).unwrap();
    writeln!(report, "max_abs_diff_zh\t{}", fmt_g(worst_hit)).unwrap();
    writeln!(report, "epsilon\t{}", fmt_g(args.epsilon)).unwrap();
    writeln!(report, "status\t{}", if failures == 0 { "pass" } else { "fail" }).unwrap();
    emit(None, &report)?;
    if failures > 0 {
        return Err(CliError::numerical(format!(
            "{failures} entries differ from the path sums by more than epsilon plus the tail bound"
        )));
    }
    Ok(())
}

pub fn generate(args: GenerateArgs) -> Result<(), CliError> {
    let (graph, labels) = planted_partition(args.blocks, args.block_size, args.p_in, args.p_out, args.seed)?;
    write_file(&args.edges, &write_edge_list(&graph))?;
    write_file(&args.labels, &write_labels(&labels))?;
    Ok(())
}
