use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use listchroma::bnp::ChildOrder;
use listchroma::cli::{
    cmd_bench, cmd_check, cmd_generate, cmd_solve, exit_code, format_bench_table, BenchGrid, SolveOptions,
};
use listchroma::instgen::{EmptyListPolicy, GenConfig, WeightMode};
use listchroma::SolverConfig;

/// Exact solver for the minimum weighted list coloring problem.
///
/// Exit codes: 0 optimal (or check passed), 1 input error, 2 infeasible,
/// 3 time limit, 4 check failed.
#[derive(Parser)]
#[command(name = "listchroma", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Generate(GenerateArgs),
    /// Solve an instance to optimality.
    Solve(SolveArgs),
    /// Validate a solution, optionally against brute force.
    Check(CheckArgs),
    /// Run a benchmark grid and print a table.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SeedArg {
    /// Random seed; falls back to LISTCHROMA_SEED, then 0.
    #[arg(long, env = "LISTCHROMA_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct WeightArgs {
    /// Color weights: `unit` or `uniform:LO:HI`.
    #[arg(long, default_value = "unit", value_parser = parse_weights)]
    weights: WeightMode,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    /// Edge probability.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Color ratio; the instance declares floor(c*n) colors.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Probability that a color enters a list.
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    #[command(flatten)]
    weights: WeightArgs,
    #[command(flatten)]
    seed: SeedArg,
    /// Redraw the whole instance instead of repairing empty lists.
    #[arg(long)]
    strict: bool,
    /// Output file (stdout if omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    SameFirst,
    DifferFirst,
}

#[derive(Args)]
struct SolverArgs {
    /// Time limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, value_enum, default_value = "same-first")]
    child_order: Order,
    /// Do not short-cut all-complete nodes with the assignment solver.
    #[arg(long)]
    no_assignment: bool,
    /// Skip the exhaustive pricing round after early-exit convergence.
    #[arg(long)]
    no_certify: bool,
    /// Skip singleton preprocessing at the root.
    #[arg(long)]
    no_root_preprocess: bool,
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    seed: SeedArg,
    /// Emit the key=value document instead of the human-readable block.
    #[arg(long)]
    kv: bool,
    /// Also write the key=value document to this file.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    input: PathBuf,
    /// Solution file (`v <vertex> <color>` lines or a key=value record).
    solution: Option<PathBuf>,
    /// Compare the optimum against exhaustive search.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', default_value = "20")]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    p: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1.0")]
    c: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    q: Vec<f64>,
    /// Instances per cell.
    #[arg(long, default_value_t = 5)]
    instances: usize,
    /// Time limit per instance in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[command(flatten)]
    weights: WeightArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn parse_weights(s: &str) -> Result<WeightMode, String> {
    if s == "unit" {
        return Ok(WeightMode::Unit);
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["uniform", lo, hi] => {
            let lo = lo.parse().map_err(|_| format!("bad lower weight `{lo}`"))?;
            let hi = hi.parse().map_err(|_| format!("bad upper weight `{hi}`"))?;
            Ok(WeightMode::Uniform { lo, hi })
        }
        _ => Err("expected `unit` or `uniform:LO:HI`".into()),
    }
}

fn seconds(t: Option<f64>) -> Result<Option<Duration>, String> {
    t.map(|s| Duration::try_from_secs_f64(s).map_err(|_| format!("invalid time limit {s}")))
        .transpose()
}

fn generate_usage() -> String {
    use clap::CommandFactory;
    let mut cmd = Cli::command();
    cmd.find_subcommand_mut("generate")
        .map(|c| c.render_usage().to_string())
        .unwrap_or_default()
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Generate(a) => {
            let cfg = GenConfig {
                weights: a.weights.weights,
                empty_lists: if a.strict { EmptyListPolicy::Redraw } else { EmptyListPolicy::Repair },
                ..GenConfig::new(a.n, a.p, a.c, a.q, a.seed.seed)
            };
            let text = cmd_generate(&cfg).map_err(|e| format!("{e}\n\n{}", generate_usage()))?;
            emit(a.out.as_deref(), &text)?;
            Ok(exit_code::OPTIMAL)
        }
        Command::Solve(a) => {
            let text = read(&a.input)?;
            let config = SolverConfig {
                time_limit: seconds(a.solver.time_limit)?,
                child_order: match a.solver.child_order {
                    Order::SameFirst => ChildOrder::SameFirst,
                    Order::DifferFirst => ChildOrder::DifferFirst,
                },
                use_assignment: !a.solver.no_assignment,
                certify_pricing: !a.solver.no_certify,
                preprocess_root: !a.solver.no_root_preprocess,
            };
            let opts = SolveOptions {
                config,
                seed: a.seed.seed,
            };
            let (record, code) = cmd_solve(&text, &opts).map_err(|e| format!("{}: {e}", a.input.display()))?;
            if a.kv {
                print!("{}", record.to_kv());
            } else {
                print!("{}", record.to_human());
            }
            if let Some(path) = &a.out {
                emit(Some(path), &record.to_kv())?;
            }
            Ok(code)
        }
        Command::Check(a) => {
            let inst = read(&a.input)?;
            let sol = a.solution.as_deref().map(read).transpose()?;
            let report = cmd_check(&inst, sol.as_deref(), a.oracle).map_err(|e| e.to_string())?;
            for line in &report.lines {
                println!("{line}");
            }
            Ok(if report.passed { exit_code::OPTIMAL } else { exit_code::CHECK_FAILED })
        }
        Command::Bench(a) => {
            let grid = BenchGrid {
                ns: a.n,
                ps: a.p,
                cs: a.c,
                qs: a.q,
                instances: a.instances,
                seed: a.seed.seed,
                time_limit: seconds(a.time_limit)?,
                weights: a.weights.weights,
            };
            let cells = cmd_bench(&grid).map_err(|e| e.to_string())?;
            emit(a.out.as_deref(), &format_bench_table(&cells))?;
            Ok(exit_code::OPTIMAL)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit_code::INPUT_ERROR as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit_code::INPUT_ERROR as u8)
        }
    }
}
