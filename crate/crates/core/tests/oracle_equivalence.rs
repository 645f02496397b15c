mod common;

use common::{small, Small};
use listchroma::bnp::{solve, ChildOrder, SolveStatus, SolverConfig};
use listchroma::oracle::{exhaustive_solve, oracle_solve, DEFAULT_CAP};
use listchroma::check_coloring;
use proptest::prelude::*;

fn optimum(status: &SolveStatus) -> Option<u64> {
    match status {
        SolveStatus::Optimal(c) => Some(c.weight),
        SolveStatus::Infeasible => None,
        SolveStatus::TimeLimit(_) => panic!("no time limit was set"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pruned_oracle_matches_exhaustive(s in small(8)) {
        let inst = s.instance();
        let a = oracle_solve(&inst, DEFAULT_CAP).unwrap();
        let b = exhaustive_solve(&inst, DEFAULT_CAP).unwrap();
        prop_assert_eq!(a.optimum, b.optimum);
        if let Some(w) = &a.witness {
            prop_assert_eq!(check_coloring(&inst, &w.assignment), Ok(w.weight));
        }
    }

    #[test]
    fn solver_matches_oracle(s in small(10)) {
        let inst = s.instance();
        let truth = oracle_solve(&inst, DEFAULT_CAP).unwrap().optimum;
        let report = solve(&inst, &SolverConfig::default()).unwrap();
        if let Some(c) = report.status.coloring() {
            prop_assert_eq!(check_coloring(&inst, &c.assignment), Ok(c.weight));
        }
        prop_assert_eq!(optimum(&report.status), truth, "{:?}", s);
    }

    #[test]
    fn configuration_does_not_change_optimum(s in small(9)) {
        let inst = s.instance();
        let base = optimum(&solve(&inst, &SolverConfig::default()).unwrap().status);
        let variants = [
            SolverConfig { child_order: ChildOrder::DifferFirst, ..SolverConfig::default() },
            SolverConfig { use_assignment: false, ..SolverConfig::default() },
            SolverConfig { certify_pricing: false, ..SolverConfig::default() },
            SolverConfig { preprocess_root: false, ..SolverConfig::default() },
        ];
        for config in &variants {
            prop_assert_eq!(optimum(&solve(&inst, config).unwrap().status), base, "{:?} {:?}", s, config);
        }
    }
}

#[test]
fn dense_unit_weight_batch() {
    for seed in 0..40 {
        let s = Small { n: 12, p: 0.75, c: 1.0, q: 0.75, weighted: seed % 2 == 0, seed };
        let inst = s.instance();
        let truth = oracle_solve(&inst, DEFAULT_CAP).unwrap().optimum;
        assert_eq!(optimum(&solve(&inst, &SolverConfig::default()).unwrap().status), truth, "{s:?}");
    }
}

#[test]
fn solve_is_deterministic() {
    let inst = Small { n: 12, p: 0.5, c: 1.0, q: 0.5, weighted: true, seed: 99 }.instance();
    let a = solve(&inst, &SolverConfig::default()).unwrap();
    let b = solve(&inst, &SolverConfig::default()).unwrap();
    assert_eq!(a.status, b.status);
    assert_eq!((a.nodes, a.columns_generated, a.pricing_calls, a.lp_solves), (b.nodes, b.columns_generated, b.pricing_calls, b.lp_solves));
}
