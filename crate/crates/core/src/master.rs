//! Restricted master problem: the LP relaxation of the set-covering model
//! over the current column pool.
//!
//! Rows are one covering row per vertex (`Σ x >= 1`) followed by one
//! capacity row per bounded class (`Σ x <= |C^k|`). The pool starts with one
//! dummy column per vertex, priced at `M = 1 + Σ w`, so the LP is feasible
//! from the first solve; a dummy still in use at the optimum means the node
//! has no list coloring.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::{Color, Instance};
use crate::lp::{RowSense, Simplex};
use crate::partition::{partition_colors, ColorPartition};

/// Tolerance for feasibility, integrality and reduced-cost tests.
pub const EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnClass {
    /// Real column of the class with this representative.
    Color(Color),
    /// Artificial column `({v}, d_v)`.
    Dummy(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Column {
    pub vertices: VertexSet,
    pub class: ColumnClass,
    pub cost: u64,
}

impl Column {
    pub fn size(&self) -> usize {
        self.vertices.count_ones(..)
    }

    pub fn is_dummy(&self) -> bool {
        matches!(self.class, ColumnClass::Dummy(_))
    }

    pub fn rep(&self) -> Option<Color> {
        match self.class {
            ColumnClass::Color(k) => Some(k),
            ColumnClass::Dummy(_) => None,
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.ones().map(|v| v.to_string()).collect();
        match self.class {
            ColumnClass::Color(k) => write!(f, "({{{}}}, k={k})", vs.join(",")),
            ColumnClass::Dummy(v) => write!(f, "({{{}}}, d_{v})", vs.join(",")),
        }
    }
}

/// Cover-row duals `pi` and capacity-row duals `gamma`, the latter indexed
/// like the partition's classes and zero for unbounded classes.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    pub pi: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl DualSolution {
    /// `Σ_{v∈S} π_v`.
    pub fn pi_weight(&self, set: &VertexSet) -> f64 {
        set.ones().map(|v| self.pi[v]).sum()
    }
}

#[derive(Debug, Clone)]
pub struct LpResult {
    pub objective: f64,
    /// Value per pool column, in pool order.
    pub primal: Vec<f64>,
    pub duals: DualSolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrality {
    Integral,
    /// Every column with `|S| >= 2` is integral but some singleton is not.
    SingletonFractionalOnly,
    FractionalOnBigSets,
    /// Integral, but an artificial column is in use.
    DummyActive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeBound {
    Infeasible,
    AtLeast(u64),
}

/// An integral column selection; pool indices, repeated for values above one.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerSelection {
    pub columns: Vec<usize>,
    pub objective: f64,
}

#[derive(Debug, Clone)]
pub struct MasterProblem {
    graph: Graph,
    partition: ColorPartition,
    class_row: Vec<Option<usize>>,
    big_m: u64,
    columns: Vec<Column>,
    keys: HashSet<(VertexSet, ColumnClass)>,
    lp: Simplex,
}

impl MasterProblem {
    /// Builds the master for `inst` with a pool of dummy columns only.
    pub fn init_with_dummies(inst: &Instance) -> Self {
        let n = inst.n();
        let partition = partition_colors(inst);
        let mut rows: Vec<(RowSense, f64)> = vec![(RowSense::Ge, 1.0); n];
        let mut class_row = vec![None; partition.len()];
        for (idx, class) in partition.bounded_classes() {
            class_row[idx] = Some(rows.len());
            rows.push((RowSense::Le, class.size() as f64));
        }
        let mut mp = MasterProblem {
            graph: inst.graph().clone(),
            big_m: 1 + inst.total_weight(),
            partition,
            class_row,
            columns: Vec::new(),
            keys: HashSet::new(),
            lp: Simplex::new(&rows),
        };
        for v in 0..n {
            let mut s = mp.graph.empty_set();
            s.insert(v);
            let col = mp.push(Column {
                vertices: s,
                class: ColumnClass::Dummy(v),
                cost: mp.big_m,
            });
            mp.lp.set_basic(v, col);
        }
        mp
    }

    /// A fresh, unsolved master over the same rows whose real columns are
    /// `order` (pool indices), in that order, behind the dummies.
    pub fn rebuilt(&self, order: &[usize]) -> MasterProblem {
        let mut rows: Vec<(RowSense, f64)> = vec![(RowSense::Ge, 1.0); self.graph.n()];
        for (_, class) in self.partition.bounded_classes() {
            rows.push((RowSense::Le, class.size() as f64));
        }
        let mut mp = MasterProblem {
            graph: self.graph.clone(),
            partition: self.partition.clone(),
            class_row: self.class_row.clone(),
            big_m: self.big_m,
            columns: Vec::new(),
            keys: HashSet::new(),
            lp: Simplex::new(&rows),
        };
        for (j, col) in self.columns.iter().enumerate() {
            if let ColumnClass::Dummy(v) = col.class {
                let at = mp.push(col.clone());
                debug_assert_eq!(at, j);
                mp.lp.set_basic(v, at);
            }
        }
        for &j in order {
            if !self.columns[j].is_dummy() {
                mp.push(self.columns[j].clone());
            }
        }
        mp
    }

    pub fn partition(&self) -> &ColorPartition {
        &self.partition
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn big_m(&self) -> u64 {
        self.big_m
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn contains(&self, vertices: &VertexSet, class: ColumnClass) -> bool {
        self.keys.contains(&(vertices.clone(), class))
    }

    /// Real column `(vertices, k)` priced at the weight of class `k`.
    pub fn make_column(&self, vertices: VertexSet, rep: Color) -> Column {
        let cost = self.partition.class_by_rep(rep).map_or(0, |c| c.weight);
        Column {
            vertices,
            class: ColumnClass::Color(rep),
            cost,
        }
    }

    pub fn validate_column(&self, col: &Column) -> Result<()> {
        if col.vertices.count_ones(..) == 0 {
            return Err(Error::InvalidColumn(format!("{col} is empty")));
        }
        match col.class {
            ColumnClass::Color(k) => {
                let class = self
                    .partition
                    .class_by_rep(k)
                    .ok_or_else(|| Error::InvalidColumn(format!("{col}: {k} is not a class representative")))?;
                if !col.vertices.is_subset(&class.vertices) {
                    return Err(Error::InvalidColumn(format!("{col} leaves V_k")));
                }
                if !self.graph.is_stable(&col.vertices) {
                    return Err(Error::InvalidColumn(format!("{col} is not stable")));
                }
                if col.cost != class.weight {
                    return Err(Error::InvalidColumn(format!("{col} has cost {}", col.cost)));
                }
            }
            ColumnClass::Dummy(v) => {
                if col.size() != 1 || !col.vertices.contains(v) || col.cost != self.big_m {
                    return Err(Error::InvalidColumn(format!("malformed dummy {col}")));
                }
            }
        }
        Ok(())
    }

    fn push(&mut self, col: Column) -> usize {
        let mut entries: Vec<(usize, f64)> = col.vertices.ones().map(|v| (v, 1.0)).collect();
        if let ColumnClass::Color(k) = col.class {
            let idx = self.partition.class_index_of(k).expect("validated class");
            if let Some(row) = self.class_row[idx] {
                entries.push((row, 1.0));
            }
        }
        self.keys.insert((col.vertices.clone(), col.class));
        self.columns.push(col.clone());
        self.lp.add_column(col.cost as f64, entries)
    }

    pub fn add_columns(&mut self, cols: Vec<Column>) -> Result<()> {
        for col in &cols {
            self.validate_column(col)?;
        }
        let mut seen = HashSet::new();
        for col in &cols {
            if self.contains(&col.vertices, col.class) || !seen.insert((col.vertices.clone(), col.class)) {
                return Err(Error::DuplicateColumn(col.to_string()));
            }
        }
        for col in cols {
            self.push(col);
        }
        Ok(())
    }

    pub fn solve_lp(&mut self) -> Result<LpResult> {
        self.lp.solve()?;
        let n = self.graph.n();
        let y = self.lp.duals();
        let pi = y[..n].iter().map(|&p| p.max(0.0)).collect();
        let gamma = self
            .class_row
            .iter()
            .map(|row| row.map_or(0.0, |r| (-y[r]).max(0.0)))
            .collect();
        Ok(LpResult {
            objective: self.lp.objective(),
            primal: self.lp.primal(),
            duals: DualSolution { pi, gamma },
        })
    }

    /// Reduced cost in the pricing sign convention: `Σπ - (cost + γ_k)`.
    /// Positive means the column would improve the LP.
    pub fn reduced_cost(&self, col: &Column, duals: &DualSolution) -> f64 {
        let gamma = col
            .rep()
            .and_then(|k| self.partition.class_index_of(k))
            .map_or(0.0, |i| duals.gamma[i]);
        duals.pi_weight(&col.vertices) - (col.cost as f64 + gamma)
    }
}

fn is_fractional(x: f64) -> bool {
    (x - x.round()).abs() > EPS
}

pub fn check_integrality(mp: &MasterProblem, res: &LpResult) -> Integrality {
    let mut big = false;
    let mut single = false;
    let mut dummy = false;
    for (col, &x) in mp.columns.iter().zip(&res.primal) {
        if is_fractional(x) {
            if col.size() >= 2 {
                big = true;
            } else {
                single = true;
            }
        }
        if col.is_dummy() && x > EPS {
            dummy = true;
        }
    }
    if big {
        Integrality::FractionalOnBigSets
    } else if single {
        Integrality::SingletonFractionalOnly
    } else if dummy {
        Integrality::DummyActive
    } else {
        Integrality::Integral
    }
}

/// Pool indices of an integral solution, with multiplicity.
pub fn integral_selection(mp: &MasterProblem, res: &LpResult) -> IntegerSelection {
    let mut columns = Vec::new();
    let mut objective = 0.0;
    for (j, &x) in res.primal.iter().enumerate() {
        let times = x.round().max(0.0) as usize;
        for _ in 0..times {
            columns.push(j);
            objective += mp.columns[j].cost as f64;
        }
    }
    IntegerSelection { columns, objective }
}

/// Turns an LP optimum whose non-singleton columns are integral into an
/// integral optimum of the same value.
///
/// The integral big columns are kept; what remains is an LP over singleton
/// columns, whose constraint matrix has one cover entry and at most one
/// capacity entry per column and is therefore totally unimodular. Its
/// basic optimum is integral.
pub fn extract_integer_solution(mp: &MasterProblem, res: &LpResult) -> Result<IntegerSelection> {
    let n = mp.graph.n();
    let mut selection = Vec::new();
    let mut covered = mp.graph.empty_set();
    let mut used = vec![0usize; mp.partition.len()];
    for (j, col) in mp.columns.iter().enumerate() {
        if col.size() < 2 {
            continue;
        }
        let times = res.primal[j].round().max(0.0) as usize;
        for _ in 0..times {
            selection.push(j);
            covered.union_with(&col.vertices);
            if let Some(k) = col.rep() {
                used[mp.partition.class_index_of(k).expect("pool class")] += 1;
            }
        }
    }

    let residual: Vec<usize> = (0..n).filter(|v| !covered.contains(*v)).collect();
    if !residual.is_empty() {
        let mut row_of_vertex = vec![None; n];
        let mut rows: Vec<(RowSense, f64)> = Vec::new();
        for &v in &residual {
            row_of_vertex[v] = Some(rows.len());
            rows.push((RowSense::Ge, 1.0));
        }
        let mut row_of_class = vec![None; mp.partition.len()];
        for (idx, class) in mp.partition.bounded_classes() {
            row_of_class[idx] = Some(rows.len());
            let left = class.size().saturating_sub(used[idx]);
            rows.push((RowSense::Le, left as f64));
        }
        let mut lp = Simplex::new(&rows);
        let mut pool_index = Vec::new();
        for (j, col) in mp.columns.iter().enumerate() {
            if col.size() != 1 {
                continue;
            }
            let v = col.vertices.ones().next().expect("singleton");
            let Some(row) = row_of_vertex[v] else { continue };
            let mut entries = vec![(row, 1.0)];
            if let Some(k) = col.rep() {
                if let Some(r) = row_of_class[mp.partition.class_index_of(k).expect("pool class")] {
                    entries.push((r, 1.0));
                }
            }
            let lp_col = lp.add_column(col.cost as f64, entries);
            pool_index.push(j);
            if col.is_dummy() {
                lp.set_basic(row, lp_col);
            }
        }
        lp.solve()?;
        for (lp_col, &x) in lp.primal().iter().enumerate() {
            if is_fractional(x) {
                return Err(Error::NumericalFailure(format!(
                    "residual singleton LP returned fractional value {x}"
                )));
            }
            for _ in 0..x.round().max(0.0) as usize {
                selection.push(pool_index[lp_col]);
            }
        }
    }
    selection.sort_unstable();
    let objective = selection.iter().map(|&j| mp.columns[j].cost as f64).sum();
    Ok(IntegerSelection {
        columns: selection,
        objective,
    })
}

/// Integer lower bound for the node, or `Infeasible` when the optimum
/// still pays for an artificial column.
pub fn node_lower_bound(res: &LpResult, big_m: u64) -> NodeBound {
    if res.objective >= big_m as f64 - EPS {
        NodeBound::Infeasible
    } else {
        NodeBound::AtLeast((res.objective - EPS).ceil().max(0.0) as u64)
    }
}
