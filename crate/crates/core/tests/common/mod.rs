#![allow(dead_code)]

use listchroma::instgen::{generate, GenConfig, WeightMode};
use listchroma::{build_instance, Graph, Instance, VertexSet};
use proptest::prelude::*;

/// Parameters for a small generated instance.
#[derive(Debug, Clone, Copy)]
pub struct Small {
    pub n: usize,
    pub p: f64,
    pub c: f64,
    pub q: f64,
    pub weighted: bool,
    pub seed: u64,
}

impl Small {
    pub fn instance(&self) -> Instance {
        let weights = if self.weighted {
            WeightMode::Uniform { lo: 1, hi: 9 }
        } else {
            WeightMode::Unit
        };
        generate(&GenConfig {
            weights,
            ..GenConfig::new(self.n, self.p, self.c, self.q, self.seed)
        })
        .expect("valid generator config")
    }
}

pub fn small(max_n: usize) -> impl Strategy<Value = Small> {
    (
        2..=max_n,
        prop::sample::select(vec![0.25, 0.5, 0.75]),
        prop::sample::select(vec![0.5, 1.0, 1.5]),
        prop::sample::select(vec![0.25, 0.5, 0.75]),
        any::<bool>(),
        any::<u64>(),
    )
        .prop_map(|(n, p, c, q, weighted, seed)| Small {
            n,
            p,
            c,
            q,
            weighted,
            seed,
        })
}

pub fn set_of(n: usize, vs: impl IntoIterator<Item = usize>) -> VertexSet {
    let mut s = VertexSet::with_capacity(n);
    s.extend(vs);
    s
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges)
}

/// `K_{3,3}` whose sides both carry the lists `{0,1}, {0,2}, {1,2}`: every
/// choice on the left blocks some list on the right.
pub fn mirrored_k33() -> Instance {
    let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    let lists = vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1], vec![0, 2], vec![1, 2]];
    build_instance(Graph::from_edges(6, &edges), vec![1; 3], lists).unwrap()
}

/// Every stable subset of `vertices`, by plain subset enumeration.
pub fn stable_subsets(g: &Graph, vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << vertices.len()) {
        let set: Vec<usize> = (0..vertices.len()).filter(|i| mask >> i & 1 == 1).map(|i| vertices[i]).collect();
        let stable = set
            .iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !g.has_edge(a, b)));
        if stable {
            out.push(set);
        }
    }
    out
}

use listchroma::master::{LpResult, MasterProblem};
use std::collections::HashMap;

/// Midpoint of `res` and the optimum found with the pool order reversed.
/// Both are optimal, so the midpoint is an optimal, possibly non-basic,
/// solution of the same LP.
pub fn alternate_midpoint(mp: &MasterProblem, res: &LpResult) -> LpResult {
    let order: Vec<usize> = (0..mp.columns().len()).rev().collect();
    let mut other = mp.rebuilt(&order);
    let alt = other.solve_lp().expect("rebuilt master solves");
    assert!((alt.objective - res.objective).abs() < 1e-6);
    let at: HashMap<_, _> = other
        .columns()
        .iter()
        .enumerate()
        .map(|(i, c)| ((c.vertices.clone(), c.class), i))
        .collect();
    let primal = mp
        .columns()
        .iter()
        .enumerate()
        .map(|(j, c)| 0.5 * (res.primal[j] + alt.primal[at[&(c.vertices.clone(), c.class)]]))
        .collect();
    LpResult {
        objective: res.objective,
        primal,
        duals: res.duals.clone(),
    }
}

/// Keeps the integral columns with `|S| >= 2` and finds the cheapest way
/// to cover the rest with pool singletons by trying every combination.
/// With nonnegative costs some cheapest cover uses one column per vertex,
/// so only those combinations are tried.
pub fn residual_enumeration(mp: &MasterProblem, res: &LpResult) -> f64 {
    let n = mp.graph().n();
    let part = mp.partition();
    let mut covered = vec![false; n];
    let mut left: Vec<Option<usize>> = part.classes().iter().map(|c| c.is_bounded().then(|| c.size())).collect();
    let mut fixed = 0.0;
    for (j, col) in mp.columns().iter().enumerate() {
        if col.size() >= 2 {
            let t = res.primal[j].round() as usize;
            for _ in 0..t {
                fixed += col.cost as f64;
                col.vertices.ones().for_each(|v| covered[v] = true);
                let k = part.class_index_of(col.rep().unwrap()).unwrap();
                if let Some(l) = left[k].as_mut() {
                    *l -= 1;
                }
            }
        }
    }
    let options: Vec<Vec<(f64, Option<usize>)>> = (0..n)
        .filter(|&v| !covered[v])
        .map(|v| {
            mp.columns()
                .iter()
                .filter(|c| c.size() == 1 && c.vertices.contains(v))
                .map(|c| (c.cost as f64, c.rep().map(|k| part.class_index_of(k).unwrap())))
                .collect()
        })
        .collect();
    fn go(options: &[Vec<(f64, Option<usize>)>], left: &mut Vec<Option<usize>>, acc: f64, best: &mut f64) {
        let Some((first, rest)) = options.split_first() else {
            *best = best.min(acc);
            return;
        };
        for &(cost, class) in first {
            if let Some(k) = class {
                if left[k] == Some(0) {
                    continue;
                }
                if let Some(l) = left[k].as_mut() {
                    *l -= 1;
                }
            }
            go(rest, left, acc + cost, best);
            if let Some(k) = class {
                if let Some(l) = left[k].as_mut() {
                    *l += 1;
                }
            }
        }
    }
    let mut best = f64::INFINITY;
    go(&options, &mut left, 0.0, &mut best);
    fixed + best
}
