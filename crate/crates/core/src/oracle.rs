//! Brute-force reference solver for small instances.

use crate::error::{Error, Result};
use crate::instance::{Color, Instance, ListColoring};

pub const DEFAULT_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// `None` when the instance has no list coloring.
    pub optimum: Option<u64>,
    pub witness: Option<ListColoring>,
    pub assignments_explored: u64,
}

struct Backtrack<'a> {
    inst: &'a Instance,
    prune: bool,
    assignment: Vec<Color>,
    uses: Vec<u32>,
    best: Option<(u64, Vec<Color>)>,
    explored: u64,
}

impl Backtrack<'_> {
    fn run(&mut self, v: usize, weight: u64) {
        self.explored += 1;
        if self.prune {
            if let Some((b, _)) = &self.best {
                if weight >= *b {
                    return;
                }
            }
        }
        if v == self.inst.n() {
            if self.best.as_ref().is_none_or(|(b, _)| weight < *b) {
                self.best = Some((weight, self.assignment.clone()));
            }
            return;
        }
        for &j in self.inst.list(v) {
            let clash = self.inst.graph().neighbors(v).ones().any(|u| u < v && self.assignment[u] == j);
            if clash {
                continue;
            }
            let added = if self.uses[j] == 0 { self.inst.weight(j) } else { 0 };
            self.uses[j] += 1;
            self.assignment[v] = j;
            self.run(v + 1, weight + added);
            self.uses[j] -= 1;
        }
    }
}

fn search(inst: &Instance, cap: usize, prune: bool) -> Result<OracleResult> {
    if inst.n() > cap {
        return Err(Error::TooLarge { n: inst.n(), cap });
    }
    let mut bt = Backtrack {
        inst,
        prune,
        assignment: vec![0; inst.n()],
        uses: vec![0; inst.num_declared_colors()],
        best: None,
        explored: 0,
    };
    bt.run(0, 0);
    let witness = bt.best.map(|(weight, assignment)| ListColoring { assignment, weight });
    Ok(OracleResult {
        optimum: witness.as_ref().map(|w| w.weight),
        witness,
        assignments_explored: bt.explored,
    })
}

/// Exact optimum by backtracking over vertices in id order, pruning partial
/// assignments whose active weight already matches the best found.
pub fn oracle_solve(inst: &Instance, cap: usize) -> Result<OracleResult> {
    search(inst, cap, true)
}

/// Same optimum by visiting every proper partial assignment, with no
/// bound-based pruning.
pub fn exhaustive_solve(inst: &Instance, cap: usize) -> Result<OracleResult> {
    search(inst, cap, false)
}
