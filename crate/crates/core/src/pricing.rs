//! Column pricing: for each color class `k`, look for a stable set of `G^k`
//! whose dual weight exceeds `T^k = w_k + γ_k`.
//!
//! The maximum weight stable set search is an include/exclude enumeration
//! over vertices sorted by decreasing dual, pruned when the current weight
//! plus the duals of all remaining candidates cannot beat the target.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::budget::{Budget, Interrupted};
use crate::graph::{Graph, VertexSet};
use crate::instance::Color;
use crate::master::{DualSolution, EPS};
use crate::partition::ColorPartition;

const ZERO: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct PricingTask<'a> {
    pub rep: Color,
    pub vertices: &'a VertexSet,
    pub pi: &'a [f64],
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StableSetResult {
    pub set: VertexSet,
    pub weight: f64,
    pub nodes: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PricingStats {
    pub searches: usize,
    pub search_nodes: u64,
    pub cache_hits: usize,
}

#[derive(Debug, Clone)]
pub struct PricingOutcome {
    /// One entry per partition class: a maximal stable set of `G^k` with
    /// dual weight above `T^k + EPS`, and that weight.
    pub per_class: Vec<Option<(VertexSet, f64)>>,
    pub stats: PricingStats,
}

impl PricingOutcome {
    pub fn is_empty(&self) -> bool {
        self.per_class.iter().all(Option::is_none)
    }
}

struct Search<'a> {
    order: Vec<usize>,
    weight: Vec<f64>,
    adj: Vec<FixedBitSet>,
    early_exit: bool,
    threshold: f64,
    best: Vec<usize>,
    best_weight: f64,
    nodes: u64,
    budget: &'a mut Budget,
}

impl Search<'_> {
    fn target(&self) -> f64 {
        if self.early_exit {
            self.best_weight.max(self.threshold + EPS)
        } else {
            self.best_weight
        }
    }

    /// Returns `Ok(true)` once an early exit is triggered.
    fn expand(&mut self, mut cands: FixedBitSet, current: f64, chosen: &mut Vec<usize>) -> Result<bool, Interrupted> {
        self.nodes += 1;
        self.budget.tick()?;
        let mut remaining: f64 = cands.ones().map(|i| self.weight[i]).sum();
        while let Some(i) = cands.minimum() {
            if current + remaining <= self.target() + ZERO {
                return Ok(false);
            }
            let w = current + self.weight[i];
            chosen.push(i);
            if w > self.best_weight + ZERO {
                self.best_weight = w;
                self.best.clone_from(chosen);
                if self.early_exit && w > self.threshold + EPS {
                    return Ok(true);
                }
            }
            let mut next = cands.clone();
            next.difference_with(&self.adj[i]);
            next.set(i, false);
            if self.expand(next, w, chosen)? {
                return Ok(true);
            }
            chosen.pop();
            cands.set(i, false);
            remaining -= self.weight[i];
        }
        Ok(false)
    }
}

/// Maximum `π`-weight stable set of `G^k`, or with `early_exit` the first
/// one found whose weight exceeds `threshold + EPS`.
pub fn mwss_search(graph: &Graph, task: &PricingTask<'_>, early_exit: bool, budget: &mut Budget) -> Result<StableSetResult, Interrupted> {
    let mut order: Vec<usize> = task.vertices.ones().filter(|&v| task.pi[v] > ZERO).collect();
    order.sort_by(|&a, &b| task.pi[b].total_cmp(&task.pi[a]).then(a.cmp(&b)));
    let m = order.len();
    let adj = order
        .iter()
        .map(|&v| {
            let mut row = FixedBitSet::with_capacity(m);
            for (j, &w) in order.iter().enumerate() {
                if graph.has_edge(v, w) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let weight = order.iter().map(|&v| task.pi[v]).collect();
    let mut search = Search {
        order,
        weight,
        adj,
        early_exit,
        threshold: task.threshold,
        best: Vec::new(),
        best_weight: 0.0,
        nodes: 0,
        budget,
    };
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    search.expand(all, 0.0, &mut Vec::new())?;
    let mut set = graph.empty_set();
    for &i in &search.best {
        set.insert(search.order[i]);
    }
    Ok(StableSetResult {
        set,
        weight: search.best_weight,
        nodes: search.nodes,
    })
}

/// Greedily grows a stable set to a maximal stable set of the subgraph
/// induced by `vertices`, trying vertices by decreasing `π` then id.
pub fn extend_to_maximal(set: &VertexSet, graph: &Graph, vertices: &VertexSet, pi: &[f64]) -> VertexSet {
    let mut out = set.clone();
    let mut blocked = set.clone();
    for v in set.ones() {
        blocked.union_with(graph.neighbors(v));
    }
    let mut cands: Vec<usize> = vertices.ones().filter(|&v| !blocked.contains(v)).collect();
    cands.sort_by(|&a, &b| pi[b].total_cmp(&pi[a]).then(a.cmp(&b)));
    for v in cands {
        if !blocked.contains(v) {
            out.insert(v);
            blocked.insert(v);
            blocked.union_with(graph.neighbors(v));
        }
    }
    out
}

#[derive(Default)]
struct GroupCache {
    best: Option<(VertexSet, f64)>,
    exact: bool,
}

pub fn price_all(graph: &Graph, partition: &ColorPartition, duals: &DualSolution, early_exit: bool) -> PricingOutcome {
    price_all_within(graph, partition, duals, early_exit, &mut Budget::unlimited()).expect("unlimited budget")
}

/// Prices every class, visiting them by decreasing threshold. Classes with
/// the same vertex set share one search: a set found against a larger
/// threshold is reused for the smaller ones.
pub fn price_all_within(
    graph: &Graph,
    partition: &ColorPartition,
    duals: &DualSolution,
    early_exit: bool,
    budget: &mut Budget,
) -> Result<PricingOutcome, Interrupted> {
    let classes = partition.classes();
    let threshold = |i: usize| classes[i].weight as f64 + duals.gamma[i];
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| threshold(b).total_cmp(&threshold(a)).then(classes[a].rep.cmp(&classes[b].rep)));

    let mut stats = PricingStats::default();
    let mut per_class = vec![None; classes.len()];
    let mut groups: HashMap<&VertexSet, GroupCache> = HashMap::new();
    for idx in order {
        let class = &classes[idx];
        let t = threshold(idx);
        let cache = groups.entry(&class.vertices).or_default();
        let hit = match &cache.best {
            Some((s, w)) if *w > t + EPS => Some(s.clone()),
            _ => None,
        };
        let found = if hit.is_some() || cache.exact {
            stats.cache_hits += 1;
            hit
        } else {
            let task = PricingTask {
                rep: class.rep,
                vertices: &class.vertices,
                pi: &duals.pi,
                threshold: t,
            };
            let res = mwss_search(graph, &task, early_exit, budget)?;
            stats.searches += 1;
            stats.search_nodes += res.nodes;
            let improves = cache.best.as_ref().is_none_or(|(_, w)| res.weight > *w);
            let found = (res.weight > t + EPS).then(|| res.set.clone());
            if improves {
                cache.best = Some((res.set, res.weight));
            }
            cache.exact |= !early_exit;
            found
        };
        per_class[idx] = found.map(|s| {
            let s = extend_to_maximal(&s, graph, &class.vertices, &duals.pi);
            let w = duals.pi_weight(&s);
            (s, w)
        });
    }
    Ok(PricingOutcome { per_class, stats })
}
