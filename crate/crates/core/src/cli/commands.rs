use std::fmt::Write;
use std::time::Duration;

use thiserror::Error;

use super::format::{parse_instance, parse_instance_file, parse_solution, write_instance, ParseError};
use super::record::ResultRecord;
use crate::bnp::{solve, ChildOrder, SolveStatus, SolverConfig};
use crate::error::Error;
use crate::instance::check_coloring;
use crate::instgen::{generate, GenConfig, WeightMode, PRNG_NAME};
use crate::oracle::{oracle_solve, DEFAULT_CAP};

/// Process exit codes.
pub mod exit_code {
    pub const OPTIMAL: i32 = 0;
    pub const INPUT_ERROR: i32 = 1;
    pub const INFEASIBLE: i32 = 2;
    pub const TIME_LIMIT: i32 = 3;
    /// `check` found an invalid solution or an oracle mismatch.
    pub const CHECK_FAILED: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

fn weights_label(w: WeightMode) -> String {
    match w {
        WeightMode::Unit => "unit".into(),
        WeightMode::Uniform { lo, hi } => format!("uniform:{lo}:{hi}"),
    }
}

/// Generates an instance file; the configuration is echoed as comments.
pub fn cmd_generate(cfg: &GenConfig) -> Result<String, CliError> {
    let inst = generate(cfg)?;
    let comments = vec![
        "generated by listchroma".to_string(),
        format!("n={} p={} c={} q={}", cfg.n, cfg.p, cfg.c, cfg.q),
        format!("weights={} seed={} prng={PRNG_NAME}", weights_label(cfg.weights), cfg.seed),
        format!("empty_lists={:?}", cfg.empty_lists).to_lowercase(),
    ];
    Ok(write_instance(&inst, &comments))
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub config: SolverConfig,
    pub seed: u64,
}

impl SolveOptions {
    fn echo(&self) -> Vec<(String, String)> {
        let c = &self.config;
        vec![
            ("seed".into(), self.seed.to_string()),
            (
                "config.time_limit".into(),
                c.time_limit.map_or("none".into(), |t| format!("{}", t.as_secs_f64())),
            ),
            (
                "config.child_order".into(),
                match c.child_order {
                    ChildOrder::SameFirst => "same-first".into(),
                    ChildOrder::DifferFirst => "differ-first".into(),
                },
            ),
            ("config.assignment".into(), c.use_assignment.to_string()),
            ("config.certify_pricing".into(), c.certify_pricing.to_string()),
            ("config.preprocess_root".into(), c.preprocess_root.to_string()),
        ]
    }
}

/// Solves an instance given as file text. Returns the record and the exit
/// code; the emitted assignment has been re-validated.
pub fn cmd_solve(text: &str, opts: &SolveOptions) -> Result<(ResultRecord, i32), CliError> {
    let file = parse_instance_file(text)?;
    let inst = match file.into_instance() {
        Ok(inst) => inst,
        Err(Error::EmptyList(_)) => return Ok((ResultRecord::trivially_infeasible(opts.echo()), exit_code::INFEASIBLE)),
        Err(e) => return Err(e.into()),
    };
    let report = solve(&inst, &opts.config)?;
    if let Some(c) = report.status.coloring() {
        c.validate(&inst).map_err(|v| Error::ReconstructionBug(v.to_string()))?;
    }
    let code = match report.status {
        SolveStatus::Optimal(_) => exit_code::OPTIMAL,
        SolveStatus::Infeasible => exit_code::INFEASIBLE,
        SolveStatus::TimeLimit(_) => exit_code::TIME_LIMIT,
    };
    Ok((ResultRecord::from_report(&report, opts.echo()), code))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub passed: bool,
    pub lines: Vec<String>,
}

/// Validates a solution against an instance; with `oracle`, also compares
/// the optimum against brute force (the solver is run when no solution is
/// given).
pub fn cmd_check(instance_text: &str, solution_text: Option<&str>, oracle: bool) -> Result<CheckReport, CliError> {
    let inst = parse_instance(instance_text)?;
    let mut lines = Vec::new();
    let mut passed = true;
    let mut claimed: Option<Option<u64>> = None;

    if let Some(text) = solution_text {
        let sol = parse_solution(text, inst.n())?;
        match &sol.assignment {
            Some(a) => match check_coloring(&inst, a) {
                Ok(w) => {
                    if let Some(cw) = sol.weight.filter(|&cw| cw != w) {
                        passed = false;
                        lines.push(format!("fail: claimed weight {cw}, recomputed {w}"));
                    } else {
                        lines.push(format!("pass: valid list coloring of weight {w}"));
                    }
                    claimed = Some(Some(w));
                }
                Err(v) => {
                    passed = false;
                    lines.push(format!("fail: {v}"));
                }
            },
            None if sol.status.as_deref() == Some("infeasible") => {
                lines.push("solution claims infeasibility".into());
                claimed = Some(None);
            }
            None => {
                passed = false;
                lines.push("fail: solution has no assignment".into());
            }
        }
    }

    if oracle {
        let truth = oracle_solve(&inst, DEFAULT_CAP)?.optimum;
        let claim = match claimed {
            Some(c) => c,
            None if solution_text.is_none() => match solve(&inst, &SolverConfig::default())?.status {
                SolveStatus::Optimal(c) => Some(c.weight),
                SolveStatus::Infeasible => None,
                SolveStatus::TimeLimit(_) => return Err(CliError::Usage("solver hit its time limit".into())),
            },
            None => None,
        };
        let show = |x: Option<u64>| x.map_or("infeasible".to_string(), |w| w.to_string());
        if passed && claim == truth {
            lines.push(format!("oracle: match ({})", show(truth)));
        } else if passed {
            passed = false;
            lines.push(format!("oracle: mismatch (claimed {}, oracle {})", show(claim), show(truth)));
        }
    }
    Ok(CheckReport { passed, lines })
}

#[derive(Debug, Clone)]
pub struct BenchGrid {
    pub ns: Vec<usize>,
    pub ps: Vec<f64>,
    pub cs: Vec<f64>,
    pub qs: Vec<f64>,
    pub instances: usize,
    pub seed: u64,
    pub time_limit: Option<Duration>,
    pub weights: WeightMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchCell {
    pub n: usize,
    pub p: f64,
    pub c: f64,
    pub q: f64,
    pub total: usize,
    pub solved: usize,
    /// Averages over solved instances only.
    pub avg_nodes: f64,
    pub avg_time: f64,
}

/// Runs every `(n, p, c, q)` cell of the grid, `instances` generated
/// instances each, one after another.
pub fn cmd_bench(grid: &BenchGrid) -> Result<Vec<BenchCell>, CliError> {
    if grid.instances == 0 {
        return Err(CliError::Usage("instances per cell must be positive".into()));
    }
    let config = SolverConfig {
        time_limit: grid.time_limit,
        ..SolverConfig::default()
    };
    let mut cells = Vec::new();
    let mut cell_index = 0u64;
    for &n in &grid.ns {
        for &p in &grid.ps {
            for &c in &grid.cs {
                for &q in &grid.qs {
                    let (mut solved, mut nodes, mut time) = (0usize, 0u64, 0.0f64);
                    for i in 0..grid.instances {
                        let seed = grid.seed.wrapping_add(cell_index << 20).wrapping_add(i as u64);
                        let cfg = GenConfig {
                            weights: grid.weights,
                            ..GenConfig::new(n, p, c, q, seed)
                        };
                        let inst = generate(&cfg)?;
                        let report = solve(&inst, &config)?;
                        if !matches!(report.status, SolveStatus::TimeLimit(_)) {
                            solved += 1;
                            nodes += report.nodes;
                            time += report.wall_time.as_secs_f64();
                        }
                    }
                    let avg = |x: f64| if solved > 0 { x / solved as f64 } else { 0.0 };
                    cells.push(BenchCell {
                        n,
                        p,
                        c,
                        q,
                        total: grid.instances,
                        solved,
                        avg_nodes: avg(nodes as f64),
                        avg_time: avg(time),
                    });
                    cell_index += 1;
                }
            }
        }
    }
    Ok(cells)
}

/// One row per cell. Unsolved instances are excluded from the averages; a
/// partially solved cell shows the solved count in brackets and an
/// entirely unsolved one shows `--`.
pub fn format_bench_table(cells: &[BenchCell]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>4} {:>5} {:>5} {:>5} {:>9} {:>12}", "n", "p", "c", "q", "nodes", "time");
    for cell in cells {
        let (nodes, time) = if cell.solved == 0 {
            ("--".to_string(), "--".to_string())
        } else {
            let mut t = format!("{:.1}", cell.avg_time);
            if cell.solved < cell.total {
                let _ = write!(t, "({})", cell.solved);
            }
            (format!("{:.0}", cell.avg_nodes), t)
        };
        let _ = writeln!(
            out,
            "{:>4} {:>5.2} {:>5.2} {:>5.2} {:>9} {:>12}",
            cell.n, cell.p, cell.c, cell.q, nodes, time
        );
    }
    out
}
