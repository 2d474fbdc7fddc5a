//! `bop`: bag-of-paths betweenness, classification, benchmarking and
//! oracle audits from the command line.
//!
//! Exit codes: 0 success, 1 input error, 2 numerical error, 3 degenerate
//! class.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::{CliError, EXIT_INPUT};
use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "bop", version, about = "Bag-of-paths betweenness and node classification")]
#[command(args_override_self = true)]
struct Cli {
    /// Flat `key = value` file of default flags; explicit flags win.
    #[arg(long, value_name = "FILE", global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Node betweenness, or within-class / group betweenness with labels.
    Bet(BetArgs),
    /// Predict labels for the unlabeled nodes.
    Classify(ClassifyArgs),
    /// Run the masking / tuning / scoring protocol.
    Benchmark(BenchmarkArgs),
    /// Compare the fundamental matrix with direct path sums.
    OracleCheck(OracleArgs),
    /// Write a planted-partition graph and its labels.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Edge list: `src<TAB>dst<TAB>weight` per line, 0-based ids.
    #[arg(long, value_name = "FILE")]
    edges: PathBuf,
    /// Read each line as an undirected edge.
    #[arg(long)]
    undirected: bool,
}

#[derive(Args, Debug)]
struct BetArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    theta: f64,
    /// `node,class` label file; needed by `--class`.
    #[arg(long, value_name = "FILE")]
    labels: Option<PathBuf>,
    /// Within-class betweenness of this class.
    #[arg(long)]
    class: Option<usize>,
    /// With `--class`: group betweenness from `--class` to this class.
    #[arg(long, requires = "class")]
    to_class: Option<usize>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_name = "FILE")]
    labels: PathBuf,
    /// BOP, RL, RNL, RCT, HF, RWWR, DW1 or DW2.
    #[arg(long)]
    method: String,
    /// Hyperparameter (theta, lambda or alpha).
    #[arg(long, conflicts_with = "grid")]
    param: Option<f64>,
    /// Inverse temperature for BOP; same as `--param`.
    #[arg(long, conflicts_with_all = ["param", "grid"])]
    theta: Option<f64>,
    /// Comma-separated values to tune over by cross-validation, or
    /// `default` for the method's standard grid.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, default_value_t = 10)]
    inner_folds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct BenchmarkArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Ground-truth `node,class` labels.
    #[arg(long, value_name = "FILE")]
    labels: PathBuf,
    /// Comma-separated methods; all eight by default.
    #[arg(long, alias = "method")]
    methods: Option<String>,
    #[arg(long, default_value = "0.1,0.3,0.5,0.7,0.9")]
    rates: String,
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 10)]
    outer_folds: usize,
    #[arg(long, default_value_t = 10)]
    inner_folds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Directory receiving report.json, accuracy.csv and timing.csv.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    theta: f64,
    #[arg(long, default_value_t = 1e-8)]
    epsilon: f64,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, default_value_t = 2)]
    blocks: usize,
    #[arg(long, default_value_t = 25)]
    block_size: usize,
    #[arg(long, default_value_t = 0.5)]
    p_in: f64,
    #[arg(long, default_value_t = 0.02)]
    p_out: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output edge list.
    #[arg(long, value_name = "FILE")]
    edges: PathBuf,
    /// Output label file.
    #[arg(long, value_name = "FILE")]
    labels: PathBuf,
}

fn run() -> Result<(), CliError> {
    let argv = config::expand(std::env::args().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code as i32);
        }
    };
    match cli.command {
        Command::Bet(a) => commands::bet(a),
        Command::Classify(a) => commands::classify(a),
        Command::Benchmark(a) => commands::benchmark(a),
        Command::OracleCheck(a) => commands::oracle_check(a),
        Command::Generate(a) => commands::generate(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
