//! Depth-first branch-and-price over list coloring subproblems.
//!
//! Each node is a genuine instance (the branching only adds edges or merges
//! vertices), so the same column generation runs everywhere. A node is
//! resolved by the assignment solver when every `G^k` is complete, by an
//! integral LP optimum, or else split on a pair `(u, v)` chosen from the
//! most fractional non-singleton column.

use std::collections::HashSet;
use std::time::Duration;

use crate::assignment::{all_complete, solve_assignment};
use crate::budget::{Budget, Interrupted};
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::instance::{Color, Instance, ListColoring};
use crate::master::{
    check_integrality, extract_integer_solution, integral_selection, node_lower_bound, Column, ColumnClass,
    IntegerSelection, Integrality, LpResult, MasterProblem, NodeBound, EPS,
};
use crate::node::{branch_differ, branch_same, preprocess_singletons, reconstruct, NodeState};
use crate::partition::partition_colors;
use crate::pricing::{extend_to_maximal, price_all_within};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChildOrder {
    SameFirst,
    DifferFirst,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub time_limit: Option<Duration>,
    pub child_order: ChildOrder,
    /// Resolve all-complete nodes by bipartite matching.
    pub use_assignment: bool,
    /// Re-run pricing without early exit before declaring the LP optimal.
    pub certify_pricing: bool,
    /// Apply singleton-list fixing at the root as well as at children.
    pub preprocess_root: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            time_limit: None,
            child_order: ChildOrder::SameFirst,
            use_assignment: true,
            certify_pricing: true,
            preprocess_root: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal(ListColoring),
    Infeasible,
    TimeLimit(Option<ListColoring>),
}

impl SolveStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SolveStatus::Optimal(_) => "optimal",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::TimeLimit(_) => "time_limit",
        }
    }

    pub fn coloring(&self) -> Option<&ListColoring> {
        match self {
            SolveStatus::Optimal(c) | SolveStatus::TimeLimit(Some(c)) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub nodes: u64,
    pub columns_generated: u64,
    pub pricing_calls: u64,
    pub lp_solves: u64,
    pub max_depth: usize,
    pub wall_time: Duration,
}

/// Hooks into the search, used for instrumentation and cross-checks.
pub trait SolveObserver {
    /// Column generation at a node ended: pricing found nothing.
    fn pricing_converged(&mut self, _mp: &MasterProblem, _res: &LpResult) {}
    /// An integral selection was extracted from a singleton-fractional LP.
    fn singleton_extraction(&mut self, _mp: &MasterProblem, _res: &LpResult, _selection: &IntegerSelection) {}
    /// `state` is about to be split on `(u, v)`.
    fn branched(&mut self, _state: &NodeState, _u: usize, _v: usize) {}
    /// LP bound of node `id` (including fixed-color weight).
    fn node_bound(&mut self, _id: u64, _parent: Option<u64>, _bound: f64) {}
}

pub struct NoObserver;

impl SolveObserver for NoObserver {}

struct SearchNode {
    id: u64,
    parent: Option<u64>,
    state: NodeState,
    inherited: Vec<Column>,
}

enum Abort {
    Time,
    Fatal(Error),
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        Abort::Fatal(e)
    }
}

impl From<Interrupted> for Abort {
    fn from(_: Interrupted) -> Self {
        Abort::Time
    }
}

pub fn solve(root: &Instance, config: &SolverConfig) -> Result<SolveReport> {
    solve_observed(root, config, &mut NoObserver)
}

pub fn solve_observed(root: &Instance, config: &SolverConfig, observer: &mut dyn SolveObserver) -> Result<SolveReport> {
    let mut solver = Solver {
        config,
        budget: Budget::new(config.time_limit),
        incumbent: None,
        observer,
        nodes: 0,
        columns_generated: 0,
        pricing_calls: 0,
        lp_solves: 0,
        max_depth: 0,
        next_id: 0,
    };
    let outcome = solver.run(root);
    let status = match outcome {
        Ok(()) => match solver.incumbent.take() {
            Some(c) => SolveStatus::Optimal(c),
            None => SolveStatus::Infeasible,
        },
        Err(Abort::Time) => SolveStatus::TimeLimit(solver.incumbent.take()),
        Err(Abort::Fatal(e)) => return Err(e),
    };
    Ok(SolveReport {
        status,
        nodes: solver.nodes,
        columns_generated: solver.columns_generated,
        pricing_calls: solver.pricing_calls,
        lp_solves: solver.lp_solves,
        max_depth: solver.max_depth,
        wall_time: solver.budget.elapsed(),
    })
}

struct Solver<'a> {
    config: &'a SolverConfig,
    budget: Budget,
    incumbent: Option<ListColoring>,
    observer: &'a mut dyn SolveObserver,
    nodes: u64,
    columns_generated: u64,
    pricing_calls: u64,
    lp_solves: u64,
    max_depth: usize,
    next_id: u64,
}

impl Solver<'_> {
    fn run(&mut self, root: &Instance) -> Result<(), Abort> {
        self.budget.check()?;
        let state = NodeState::root(root.clone());
        let state = if self.config.preprocess_root {
            match preprocess_singletons(state) {
                Ok(s) => s,
                Err(_) => {
                    self.nodes = 1;
                    return Ok(());
                }
            }
        } else {
            state
        };
        let mut stack = vec![self.node(None, state, Vec::new())];
        while let Some(node) = stack.pop() {
            self.budget.check()?;
            let children = self.process(node)?;
            // pushed in reverse so the preferred child is popped first
            stack.extend(children.into_iter().rev());
        }
        Ok(())
    }

    fn node(&mut self, parent: Option<u64>, state: NodeState, inherited: Vec<Column>) -> SearchNode {
        self.next_id += 1;
        SearchNode {
            id: self.next_id,
            parent,
            state,
            inherited,
        }
    }

    fn pruned_by(&self, bound: u64) -> bool {
        self.incumbent.as_ref().is_some_and(|c| bound >= c.weight)
    }

    fn accept(&mut self, candidate: ListColoring, root: &Instance) -> Result<()> {
        self.incumbent = update_incumbent(candidate, self.incumbent.take(), root)?;
        Ok(())
    }

    fn process(&mut self, node: SearchNode) -> Result<Vec<SearchNode>, Abort> {
        self.nodes += 1;
        let state = node.state;
        self.max_depth = self.max_depth.max(state.depth());
        let fixed_weight = state.fixed_weight();
        if self.pruned_by(fixed_weight) {
            return Ok(Vec::new());
        }
        let inst = state.instance();
        if inst.n() == 0 {
            let coloring = state.lift(&[])?;
            self.accept(coloring, state.root_instance())?;
            return Ok(Vec::new());
        }

        let mut mp = MasterProblem::init_with_dummies(inst);
        if self.config.use_assignment && all_complete(inst.graph(), mp.partition()) {
            if let Some(coloring) = solve_assignment(&state)? {
                self.accept(coloring, state.root_instance())?;
            }
            return Ok(Vec::new());
        }
        mp.add_columns(node.inherited)?;

        let res = self.column_generation(&mut mp)?;
        self.observer.node_bound(node.id, node.parent, res.objective + fixed_weight as f64);
        let lower = match node_lower_bound(&res, mp.big_m()) {
            NodeBound::Infeasible => return Ok(Vec::new()),
            NodeBound::AtLeast(lb) => lb + fixed_weight,
        };
        if self.pruned_by(lower) {
            return Ok(Vec::new());
        }

        let selection = match check_integrality(&mp, &res) {
            Integrality::Integral => integral_selection(&mp, &res),
            Integrality::SingletonFractionalOnly => {
                let sel = extract_integer_solution(&mp, &res)?;
                self.observer.singleton_extraction(&mp, &res, &sel);
                sel
            }
            Integrality::DummyActive => return Ok(Vec::new()),
            Integrality::FractionalOnBigSets => {
                let (u, v) = select_branching_pair(&mp, &res)
                    .ok_or_else(|| Error::NumericalFailure("no branching pair in a fractional solution".into()))?;
                self.observer.branched(&state, u, v);
                return Ok(self.children(node.id, &state, mp.columns(), u, v));
            }
        };
        let chosen = selection
            .columns
            .iter()
            .map(|&j| {
                let col = &mp.columns()[j];
                col.rep()
                    .map(|k| (col.vertices.clone(), k))
                    .ok_or_else(|| Error::ReconstructionBug(format!("dummy {col} selected below big-M")))
            })
            .collect::<Result<Vec<(VertexSet, Color)>>>()?;
        let coloring = reconstruct(&state, mp.partition(), &chosen)?;
        self.accept(coloring, state.root_instance())?;
        Ok(Vec::new())
    }

    fn column_generation(&mut self, mp: &mut MasterProblem) -> Result<LpResult, Abort> {
        loop {
            let res = mp.solve_lp()?;
            self.lp_solves += 1;
            self.budget.check()?;
            let graph = mp.graph().clone();
            let mut outcome = price_all_within(&graph, mp.partition(), &res.duals, true, &mut self.budget)?;
            self.pricing_calls += 1;
            if outcome.is_empty() && self.config.certify_pricing {
                outcome = price_all_within(&graph, mp.partition(), &res.duals, false, &mut self.budget)?;
                self.pricing_calls += 1;
            }
            if outcome.is_empty() {
                self.observer.pricing_converged(mp, &res);
                return Ok(res);
            }
            let reps = mp.partition().representatives();
            let cols: Vec<Column> = outcome
                .per_class
                .into_iter()
                .zip(reps)
                .filter_map(|(found, rep)| found.map(|(s, _)| mp.make_column(s, rep)))
                .collect();
            self.columns_generated += cols.len() as u64;
            mp.add_columns(cols)?;
        }
    }

    fn children(&mut self, id: u64, state: &NodeState, pool: &[Column], u: usize, v: usize) -> Vec<SearchNode> {
        let same = branch_same(state, u, v);
        let differ = branch_differ(state, u, v);
        let ordered = match self.config.child_order {
            ChildOrder::SameFirst => [same, differ],
            ChildOrder::DifferFirst => [differ, same],
        };
        let mut out = Vec::new();
        for child in ordered {
            if let Ok(child) = preprocess_singletons(child) {
                let inherited = inherit_columns(state, pool, &child);
                out.push(self.node(Some(id), child, inherited));
            }
        }
        out
    }
}

/// Keeps `candidate` only if it is valid and strictly lighter.
pub fn update_incumbent(candidate: ListColoring, current: Option<ListColoring>, root: &Instance) -> Result<Option<ListColoring>> {
    candidate
        .validate(root)
        .map_err(|v| Error::InvalidCandidate(v.to_string()))?;
    Ok(match current {
        Some(cur) if cur.weight <= candidate.weight => Some(cur),
        _ => Some(candidate),
    })
}

/// Picks `(u, v)` from the most fractional column with at least two
/// vertices: `u` is its lowest vertex, and `v` comes from another positive
/// column through `u` when one differs from it, else from the same column.
pub fn select_branching_pair(mp: &MasterProblem, res: &LpResult) -> Option<(usize, usize)> {
    let cols = mp.columns();
    let mut best: Option<(usize, f64)> = None;
    for (j, (col, &x)) in cols.iter().zip(&res.primal).enumerate() {
        if col.size() < 2 || (x - x.round()).abs() <= EPS {
            continue;
        }
        let d = (x - 0.5).abs();
        best = match best {
            None => Some((j, d)),
            Some((b, bd)) => {
                let better = d < bd - 1e-12 || (d <= bd + 1e-12 && col.size() > cols[b].size());
                Some(if better { (j, d) } else { (b, bd) })
            }
        };
    }
    let (s1, _) = best?;
    let first = &cols[s1].vertices;
    let u = first.minimum()?;
    let other = cols.iter().zip(&res.primal).enumerate().find_map(|(j, (col, &x))| {
        if j == s1 || x <= EPS || !col.vertices.contains(u) {
            return None;
        }
        col.vertices.difference(first).next()
    });
    let v = other.or_else(|| first.ones().find(|&w| w != u))?;
    Some((u, v))
}

/// Carries the parent's real columns over to a child, renaming vertices and
/// re-assigning classes against the child's partition. Columns that lose a
/// vertex, stop being stable, or leave their class's vertex set are
/// dropped; survivors are re-extended to maximal sets. Dummies are not
/// inherited since every master creates its own.
pub fn inherit_columns(parent: &NodeState, pool: &[Column], child: &NodeState) -> Vec<Column> {
    let map = parent.vertex_map_to(child);
    let inst = child.instance();
    let partition = partition_colors(inst);
    let zeros = vec![0.0; inst.n()];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for col in pool {
        let Some(rep) = col.rep() else { continue };
        let mut set = inst.graph().empty_set();
        let mut lost = false;
        for v in col.vertices.ones() {
            match map[v] {
                Some(c) => set.insert(c),
                None => {
                    lost = true;
                    break;
                }
            }
        }
        if lost {
            continue;
        }
        let Some(idx) = partition.class_index_of(rep) else { continue };
        let class = &partition.classes()[idx];
        if !set.is_subset(&class.vertices) || !inst.graph().is_stable(&set) {
            continue;
        }
        let set = extend_to_maximal(&set, inst.graph(), &class.vertices, &zeros);
        let class_tag = ColumnClass::Color(class.rep);
        if seen.insert((set.clone(), class_tag)) {
            out.push(Column {
                vertices: set,
                class: class_tag,
                cost: class.weight,
            });
        }
    }
    out
}
