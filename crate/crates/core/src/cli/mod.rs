//! Command implementations and file formats behind the `listchroma` binary.

mod commands;
mod format;
mod record;

pub use commands::{
    cmd_bench, cmd_check, cmd_generate, cmd_solve, exit_code, format_bench_table, BenchCell, BenchGrid, CheckReport, CliError,
    SolveOptions,
};
pub use format::{parse_instance, parse_instance_file, parse_solution, write_instance, InstanceFile, ParseError, SolutionFile};
pub use record::ResultRecord;
