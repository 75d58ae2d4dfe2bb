use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use resroc::estimators::Method;
use resroc::simulation::StudyConfig;
use resroc_cli::{
    cmd_diagnose, cmd_estimate, cmd_roc_points, cmd_simulate, parse_scores_file, parse_two_files,
    CliError, CommandOutput, Format, RunConfig, Transform, EXIT_USAGE,
};

/// Resilience-family ROC analysis of two-group classifier scores.
#[derive(Parser)]
#[command(name = "resroc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate theta, AUC, Youden index and cutpoint with each method.
    Estimate(DataCommand),
    /// Stochastic dominance and log-log diagnostics.
    Diagnose(DataCommand),
    /// Fitted and empirical ROC curves on a 1001-point grid.
    RocPoints(DataCommand),
    /// Monte Carlo comparison of the estimators under GED data.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct DataCommand {
    /// CSV file with header `score,label` (label 0 = negative, 1 = positive).
    #[arg(required_unless_present = "negative", conflicts_with_all = ["negative", "positive"])]
    input: Option<PathBuf>,
    /// Negative-group scores, one per line (use with --positive).
    #[arg(long, requires = "positive")]
    negative: Option<PathBuf>,
    /// Positive-group scores, one per line (use with --negative).
    #[arg(long, requires = "negative")]
    positive: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
    /// Estimate in the family restricted to theta >= 1.
    #[arg(long)]
    enforce_family: bool,
    /// Monotone transform applied to both groups first.
    #[arg(long, value_enum, default_value_t = Transform::None)]
    transform: Transform,
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Comma-separated subset of pl, mw, rojo.
    #[arg(long, value_delimiter = ',', default_value = "pl,mw,rojo")]
    methods: Vec<Method>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the main output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// True theta values, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
    thetas: Vec<f64>,
    /// Sample size pairs as MxN, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "60x60,60x80,60x100", value_parser = parse_size_pair)]
    sizes: Vec<(usize, usize)>,
    #[arg(long, default_value_t = 10_000)]
    reps: usize,
    #[arg(long, default_value_t = 20_240_601)]
    seed: u64,
    /// GED scale of both groups.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long)]
    enforce_family: bool,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_size_pair(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("`{s}` is not of the form MxN"))?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("`{s}`: {e}"));
    Ok((parse(m)?, parse(n)?))
}

fn run_data(cmd: DataCommand, run: fn(&resroc::TwoSampleData, &RunConfig) -> Result<CommandOutput, CliError>) -> (Result<CommandOutput, CliError>, Option<PathBuf>) {
    let data = match (&cmd.input, &cmd.negative, &cmd.positive) {
        (Some(path), _, _) => parse_scores_file(path),
        (None, Some(neg), Some(pos)) => parse_two_files(neg, pos),
        _ => unreachable!("clap enforces an input source"),
    };
    let config = RunConfig {
        alpha: cmd.common.alpha,
        methods: cmd.common.methods,
        enforce_family: cmd.enforce_family,
        transform: cmd.transform,
        format: cmd.common.format,
    };
    let out = data.map_err(CliError::from).and_then(|d| run(&d, &config));
    (out, cmd.common.out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let (result, out_path) = match cli.command {
        Command::Estimate(c) => run_data(c, cmd_estimate),
        Command::Diagnose(c) => run_data(c, cmd_diagnose),
        Command::RocPoints(c) => run_data(c, cmd_roc_points),
        Command::Simulate(s) => {
            let config = StudyConfig {
                theta_values: s.thetas,
                size_pairs: s.sizes,
                replications: s.reps,
                alpha: s.common.alpha,
                seed: s.seed,
                methods: s.common.methods,
                lambda: s.lambda,
                enforce_family: s.enforce_family,
                threads: s.threads,
            };
            (cmd_simulate(&config, s.common.format), s.common.out)
        }
    };
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let written = match &out_path {
        Some(path) => std::fs::write(path, &output.stdout),
        None => std::io::stdout().write_all(output.stdout.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    eprint!("{}", output.stderr);
    ExitCode::from(output.exit_code)
}
