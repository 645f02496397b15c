//! Node transformations checked against the oracle.

mod common;

use common::{alternate_midpoint, residual_enumeration, small, Small};
use listchroma::bnp::{solve_observed, SolveObserver, SolverConfig};
use listchroma::master::{check_integrality, extract_integer_solution, Integrality, LpResult, MasterProblem, EPS};
use listchroma::node::{branch_differ, branch_same, preprocess_singletons, NodeState};
use listchroma::oracle::{oracle_solve, DEFAULT_CAP};
use listchroma::Instance;
use proptest::prelude::*;
use std::sync::Arc;

/// Best root weight among colorings consistent with the node, if any.
fn node_optimum(state: &NodeState) -> Option<u64> {
    let res = oracle_solve(state.instance(), DEFAULT_CAP).unwrap();
    let witness = res.witness?;
    let lifted = state.lift(&witness.assignment).unwrap();
    assert_eq!(lifted.weight, state.fixed_weight() + witness.weight);
    Some(lifted.weight)
}

fn preprocessed(state: NodeState) -> Option<NodeState> {
    preprocess_singletons(state).ok()
}

#[derive(Default)]
struct FirstBranch(Option<(NodeState, usize, usize)>);

impl SolveObserver for FirstBranch {
    fn branched(&mut self, state: &NodeState, u: usize, v: usize) {
        if self.0.is_none() {
            self.0 = Some((state.clone(), u, v));
        }
    }
}

fn root(inst: &Instance) -> NodeState {
    NodeState::root(Arc::new(inst.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn preprocessing_preserves_optimum(s in small(9)) {
        let inst = s.instance();
        let truth = oracle_solve(&inst, DEFAULT_CAP).unwrap().optimum;
        let got = preprocessed(root(&inst)).and_then(|st| node_optimum(&st));
        prop_assert_eq!(got, truth);
    }

    #[test]
    fn any_pair_splits_the_solution_space(s in small(8), a in 0usize..8, b in 0usize..8) {
        let inst = s.instance();
        let (u, v) = (a.min(b) % inst.n(), a.max(b) % inst.n());
        prop_assume!(u != v && !inst.graph().has_edge(u, v));
        prop_assume!(inst.list(u).iter().any(|j| inst.allows(v, *j)));
        let st = root(&inst);
        let same = preprocessed(branch_same(&st, u, v)).and_then(|c| node_optimum(&c));
        let differ = preprocessed(branch_differ(&st, u, v)).and_then(|c| node_optimum(&c));
        let best = match (same, differ) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        prop_assert_eq!(best, oracle_solve(&inst, DEFAULT_CAP).unwrap().optimum);
    }

    #[test]
    fn solver_branching_pair_is_robust(s in small(8)) {
        let inst = s.instance();
        let mut obs = FirstBranch::default();
        solve_observed(&inst, &SolverConfig::default(), &mut obs).unwrap();
        if let Some((state, u, v)) = obs.0 {
            prop_assert!(!state.instance().graph().has_edge(u, v));
            let same = preprocessed(branch_same(&state, u, v)).and_then(|c| node_optimum(&c));
            let differ = preprocessed(branch_differ(&state, u, v)).and_then(|c| node_optimum(&c));
            let best = match (same, differ) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
            prop_assert_eq!(best, node_optimum(&state));
        }
    }
}

#[derive(Default)]
struct Midpoints {
    checked: usize,
}

impl SolveObserver for Midpoints {
    fn pricing_converged(&mut self, mp: &MasterProblem, res: &LpResult) {
        assert_ne!(check_integrality(mp, res), Integrality::SingletonFractionalOnly);
        let mid = alternate_midpoint(mp, res);
        if check_integrality(mp, &mid) != Integrality::SingletonFractionalOnly {
            return;
        }
        let sel = extract_integer_solution(mp, &mid).unwrap();
        assert!((sel.objective - res.objective).abs() < EPS, "{} vs {}", sel.objective, res.objective);
        assert!((residual_enumeration(mp, &mid) - sel.objective).abs() < EPS);
        let mut cover = vec![0usize; mp.graph().n()];
        for &j in &sel.columns {
            mp.columns()[j].vertices.ones().for_each(|v| cover[v] += 1);
        }
        assert!(cover.iter().all(|&c| c >= 1));
        self.checked += 1;
    }
}

#[test]
fn extraction_on_non_basic_optima() {
    // A basic optimum never has fractional singletons alone (the singleton
    // system is totally unimodular), so midpoints of two optima are used.
    let mut obs = Midpoints::default();
    for seed in 0..300 {
        let inst = Small { n: 10, p: 0.5, c: 1.5, q: 0.25, weighted: seed % 2 == 1, seed }.instance();
        solve_observed(&inst, &SolverConfig::default(), &mut obs).unwrap();
    }
    assert!(obs.checked > 0);
}
