//! Exact solver for the minimum weighted list coloring problem.
//!
//! Every vertex must take a color from its own list, adjacent vertices take
//! different colors, and the cost is the total weight of the distinct colors
//! used. The solver is a branch-and-price over a set-covering model whose
//! columns are stable sets paired with classes of interchangeable colors.

pub mod assignment;
pub mod bnp;
pub mod budget;
pub mod cli;
pub mod error;
pub mod graph;
pub mod instance;
pub mod instgen;
pub mod lp;
pub mod master;
pub mod node;
pub mod oracle;
pub mod partition;
pub mod pricing;

pub use bnp::{solve, SolveReport, SolveStatus, SolverConfig};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use instance::{build_instance, check_coloring, Color, Instance, ListColoring};
pub use partition::{partition_colors, ColorPartition};
