//! Dense revised primal simplex for `min c·x, A x (>=|<=) b, x >= 0`.
//!
//! Every row gets a slack (`<=`) or surplus (`>=`) variable. The caller
//! supplies a primal feasible starting basis; afterwards columns may be added
//! and the solve resumes from the previous basis. Entering variables are
//! chosen by Dantzig's rule; after a run of degenerate pivots the solver
//! switches to Bland's rule until it makes progress again.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const OPT_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-7;
const REFACTOR_EVERY: usize = 64;
const DEGENERATE_RUN: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Ge,
    Le,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    Slack(usize),
    Col(usize),
}

#[derive(Debug, Clone)]
struct LpColumn {
    cost: f64,
    entries: Vec<(usize, f64)>,
}

#[derive(Debug, Clone)]
pub struct Simplex {
    senses: Vec<RowSense>,
    rhs: Vec<f64>,
    cols: Vec<LpColumn>,
    basis: Vec<Var>,
    /// `None` for nonbasic columns.
    col_pos: Vec<Option<usize>>,
    slack_pos: Vec<Option<usize>>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    pivots_since_refactor: usize,
    pub total_pivots: usize,
}

impl Simplex {
    pub fn new(rows: &[(RowSense, f64)]) -> Self {
        let m = rows.len();
        Simplex {
            senses: rows.iter().map(|r| r.0).collect(),
            rhs: rows.iter().map(|r| r.1).collect(),
            cols: Vec::new(),
            basis: (0..m).map(Var::Slack).collect(),
            col_pos: Vec::new(),
            slack_pos: (0..m).map(Some).collect(),
            binv: identity(m),
            xb: vec![0.0; m],
            pivots_since_refactor: 0,
            total_pivots: 0,
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn add_column(&mut self, cost: f64, entries: Vec<(usize, f64)>) -> usize {
        debug_assert!(entries.iter().all(|&(r, _)| r < self.num_rows()));
        self.cols.push(LpColumn { cost, entries });
        self.col_pos.push(None);
        self.cols.len() - 1
    }

    /// Makes column `col` basic in place of row `row`'s slack. Intended for
    /// setting up the starting basis before the first solve.
    pub fn set_basic(&mut self, row: usize, col: usize) {
        if let Var::Col(old) = self.basis[row] {
            self.col_pos[old] = None;
        } else if let Var::Slack(s) = self.basis[row] {
            self.slack_pos[s] = None;
        }
        self.basis[row] = Var::Col(col);
        self.col_pos[col] = Some(row);
    }

    pub fn basis(&self) -> &[Var] {
        &self.basis
    }

    fn m(&self) -> usize {
        self.rhs.len()
    }

    fn var_cost(&self, var: Var) -> f64 {
        match var {
            Var::Slack(_) => 0.0,
            Var::Col(j) => self.cols[j].cost,
        }
    }

    fn var_entries(&self, var: Var) -> Vec<(usize, f64)> {
        match var {
            Var::Slack(i) => vec![(i, self.slack_sign(i))],
            Var::Col(j) => self.cols[j].entries.clone(),
        }
    }

    fn slack_sign(&self, row: usize) -> f64 {
        match self.senses[row] {
            RowSense::Ge => -1.0,
            RowSense::Le => 1.0,
        }
    }

    /// Recomputes the basis inverse from scratch and the basic solution.
    fn refactor(&mut self) -> Result<()> {
        let m = self.m();
        let mut b = vec![0.0; m * m];
        for (pos, &var) in self.basis.iter().enumerate() {
            for (r, a) in self.var_entries(var) {
                b[r * m + pos] = a;
            }
        }
        self.binv = invert(&mut b, m).ok_or_else(|| Error::NumericalFailure("singular basis".into()))?;
        self.xb = (0..m)
            .map(|i| (0..m).map(|r| self.binv[i * m + r] * self.rhs[r]).sum())
            .collect();
        for x in self.xb.iter_mut() {
            if *x < -FEAS_TOL {
                return Err(Error::NumericalFailure(format!("basis is primal infeasible ({x:e})")));
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        self.pivots_since_refactor = 0;
        Ok(())
    }

    /// `y = c_B B^{-1}`.
    fn duals_internal(&self) -> Vec<f64> {
        let m = self.m();
        let mut y = vec![0.0; m];
        for (pos, &var) in self.basis.iter().enumerate() {
            let c = self.var_cost(var);
            if c != 0.0 {
                let row = &self.binv[pos * m..(pos + 1) * m];
                for (yi, b) in y.iter_mut().zip(row) {
                    *yi += c * b;
                }
            }
        }
        y
    }

    fn reduced_cost(&self, var: Var, y: &[f64]) -> f64 {
        match var {
            Var::Slack(i) => -self.slack_sign(i) * y[i],
            Var::Col(j) => {
                let col = &self.cols[j];
                col.cost - col.entries.iter().map(|&(r, a)| a * y[r]).sum::<f64>()
            }
        }
    }

    fn choose_entering(&self, y: &[f64], bland: bool) -> Option<Var> {
        let candidates = (0..self.m())
            .filter(|&i| self.slack_pos[i].is_none())
            .map(Var::Slack)
            .chain((0..self.cols.len()).filter(|&j| self.col_pos[j].is_none()).map(Var::Col));
        let mut best: Option<(Var, f64)> = None;
        for var in candidates {
            let d = self.reduced_cost(var, y);
            if d < -OPT_TOL {
                if bland {
                    return Some(var);
                }
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((var, d));
                }
            }
        }
        best.map(|(v, _)| v)
    }

    fn ftran(&self, var: Var) -> Vec<f64> {
        let m = self.m();
        let mut alpha = vec![0.0; m];
        for (r, a) in self.var_entries(var) {
            for (i, al) in alpha.iter_mut().enumerate() {
                *al += self.binv[i * m + r] * a;
            }
        }
        alpha
    }

    fn pivot(&mut self, leave_pos: usize, enter: Var, alpha: &[f64]) {
        let m = self.m();
        let piv = alpha[leave_pos];
        let theta = self.xb[leave_pos] / piv;
        for (i, x) in self.xb.iter_mut().enumerate() {
            if i == leave_pos {
                *x = theta;
            } else {
                *x = (*x - theta * alpha[i]).max(0.0);
            }
        }
        let pivot_row: Vec<f64> = self.binv[leave_pos * m..(leave_pos + 1) * m].iter().map(|b| b / piv).collect();
        for i in 0..m {
            if i == leave_pos || alpha[i] == 0.0 {
                continue;
            }
            let f = alpha[i];
            let row = &mut self.binv[i * m..(i + 1) * m];
            for (b, p) in row.iter_mut().zip(&pivot_row) {
                *b -= f * p;
            }
        }
        self.binv[leave_pos * m..(leave_pos + 1) * m].copy_from_slice(&pivot_row);

        match self.basis[leave_pos] {
            Var::Slack(i) => self.slack_pos[i] = None,
            Var::Col(j) => self.col_pos[j] = None,
        }
        match enter {
            Var::Slack(i) => self.slack_pos[i] = Some(leave_pos),
            Var::Col(j) => self.col_pos[j] = Some(leave_pos),
        }
        self.basis[leave_pos] = enter;
        self.pivots_since_refactor += 1;
        self.total_pivots += 1;
    }

    /// Runs primal simplex from the current basis to optimality.
    pub fn solve(&mut self) -> Result<()> {
        self.refactor()?;
        let m = self.m();
        let limit = 50_000 + 200 * (m + self.cols.len());
        let mut degenerate = 0usize;
        for _ in 0..limit {
            if self.pivots_since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
            }
            let bland = degenerate >= DEGENERATE_RUN;
            let y = self.duals_internal();
            let Some(enter) = self.choose_entering(&y, bland) else {
                return Ok(());
            };
            let alpha = self.ftran(enter);
            let mut leave: Option<(usize, f64)> = None;
            for (i, &a) in alpha.iter().enumerate() {
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.xb[i] / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        let better = if ratio < lr - 1e-12 {
                            true
                        } else if ratio <= lr + 1e-12 {
                            if bland {
                                self.basis[i] < self.basis[li]
                            } else {
                                a > alpha[li]
                            }
                        } else {
                            false
                        };
                        if better {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
            let Some((leave_pos, ratio)) = leave else {
                return Err(Error::NumericalFailure("unbounded direction".into()));
            };
            if ratio <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(leave_pos, enter, &alpha);
        }
        Err(Error::NumericalFailure(format!("no convergence after {limit} pivots")))
    }

    pub fn primal(&self) -> Vec<f64> {
        self.col_pos
            .iter()
            .map(|p| p.map_or(0.0, |pos| self.xb[pos]))
            .collect()
    }

    pub fn objective(&self) -> f64 {
        self.basis
            .iter()
            .zip(&self.xb)
            .map(|(&v, &x)| self.var_cost(v) * x)
            .sum()
    }

    /// Row duals `y` with `c_j - y·a_j >= 0` for every column at optimality.
    /// `>=` rows have `y >= 0`, `<=` rows have `y <= 0`.
    pub fn duals(&self) -> Vec<f64> {
        self.duals_internal()
    }
}

fn identity(m: usize) -> Vec<f64> {
    let mut id = vec![0.0; m * m];
    for i in 0..m {
        id[i * m + i] = 1.0;
    }
    id
}

/// Gauss-Jordan inversion with partial pivoting; `a` is destroyed.
fn invert(a: &mut [f64], m: usize) -> Option<Vec<f64>> {
    let mut inv = identity(m);
    for c in 0..m {
        let p = (c..m).max_by(|&i, &j| a[i * m + c].abs().total_cmp(&a[j * m + c].abs()))?;
        if a[p * m + c].abs() < 1e-11 {
            return None;
        }
        if p != c {
            for k in 0..m {
                a.swap(p * m + k, c * m + k);
                inv.swap(p * m + k, c * m + k);
            }
        }
        let d = a[c * m + c];
        for k in 0..m {
            a[c * m + k] /= d;
            inv[c * m + k] /= d;
        }
        for i in 0..m {
            if i == c {
                continue;
            }
            let f = a[i * m + c];
            if f == 0.0 {
                continue;
            }
            for k in 0..m {
                a[i * m + k] -= f * a[c * m + k];
                inv[i * m + k] -= f * inv[c * m + k];
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_small_matrix() {
        let mut a = vec![0.0, 2.0, 1.0, 1.0];
        let inv = invert(&mut a, 2).unwrap();
        let expect = [-0.5, 1.0, 0.5, 0.0];
        for (x, e) in inv.iter().zip(expect) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn covering_lp_with_artificial_start() {
        // min 4a + 4b + x  s.t. a + x >= 1, b + x >= 1
        let mut lp = Simplex::new(&[(RowSense::Ge, 1.0), (RowSense::Ge, 1.0)]);
        let a = lp.add_column(4.0, vec![(0, 1.0)]);
        let b = lp.add_column(4.0, vec![(1, 1.0)]);
        lp.set_basic(0, a);
        lp.set_basic(1, b);
        lp.solve().unwrap();
        assert!((lp.objective() - 8.0).abs() < 1e-9);
        assert_eq!(lp.duals(), vec![4.0, 4.0]);

        let x = lp.add_column(1.0, vec![(0, 1.0), (1, 1.0)]);
        lp.solve().unwrap();
        assert!((lp.objective() - 1.0).abs() < 1e-9);
        assert!((lp.primal()[x] - 1.0).abs() < 1e-9);
        let y = lp.duals();
        assert!((y[0] + y[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn le_rows_have_nonpositive_duals() {
        // min 10 d + x  s.t. d + x >= 1, x <= 0.5
        let mut lp = Simplex::new(&[(RowSense::Ge, 1.0), (RowSense::Le, 0.5)]);
        let d = lp.add_column(10.0, vec![(0, 1.0)]);
        lp.add_column(1.0, vec![(0, 1.0), (1, 1.0)]);
        lp.set_basic(0, d);
        lp.solve().unwrap();
        assert!((lp.objective() - 5.5).abs() < 1e-9);
        let y = lp.duals();
        assert!((y[0] - 10.0).abs() < 1e-9);
        assert!((y[1] + 9.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_start_is_reported() {
        let mut lp = Simplex::new(&[(RowSense::Ge, 1.0)]);
        lp.add_column(1.0, vec![(0, 1.0)]);
        assert!(matches!(lp.solve(), Err(Error::NumericalFailure(_))));
    }
}
