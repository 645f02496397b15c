//! Nodes where every `G^k` is complete: each color can serve at most one
//! vertex, so the problem is a minimum weight perfect matching between
//! `V ∪ Z` and the colors, where the `|C| - |V|` dummies in `Z` absorb the
//! unused colors at zero cost.

use crate::error::Result;
use crate::graph::Graph;
use crate::instance::ListColoring;
use crate::node::NodeState;
use crate::partition::ColorPartition;

/// True iff every class vertex set induces a clique.
pub fn all_complete(graph: &Graph, partition: &ColorPartition) -> bool {
    partition.classes().iter().all(|c| graph.is_clique(&c.vertices))
}

/// Minimum cost perfect matching on a square cost matrix (Hungarian method
/// with potentials, O(n³)). Returns `row -> column` and the total cost.
pub fn hungarian(cost: &[Vec<i64>]) -> (Vec<usize>, i64) {
    let n = cost.len();
    if n == 0 {
        return (Vec::new(), 0);
    }
    debug_assert!(cost.iter().all(|r| r.len() == n));
    // 1-based rows/columns; column 0 is the virtual root of each augmentation
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[owner[j] - 1] = j - 1;
    }
    let total = assignment.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
    (assignment, total)
}

/// Solves an all-complete node exactly; `Ok(None)` means infeasible.
pub fn solve_assignment(state: &NodeState) -> Result<Option<ListColoring>> {
    let inst = state.instance();
    let colors = inst.colors();
    let n = inst.n();
    if n > colors.len() {
        return Ok(None);
    }
    let forbidden = 1 + inst.total_weight() as i64;
    let side = colors.len();
    let cost: Vec<Vec<i64>> = (0..side)
        .map(|row| {
            colors
                .iter()
                .map(|&j| match row < n {
                    true if inst.allows(row, j) => inst.weight(j) as i64,
                    true => forbidden,
                    false => 0,
                })
                .collect()
        })
        .collect();
    let (matching, _) = hungarian(&cost);
    let mut current = Vec::with_capacity(n);
    for (v, &c) in matching.iter().take(n).enumerate() {
        let j = colors[c];
        if !inst.allows(v, j) {
            return Ok(None);
        }
        current.push(j);
    }
    state.lift(&current).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::build_instance;
    use crate::partition::partition_colors;

    fn node(n: usize, edges: &[(usize, usize)], weights: Vec<u64>, lists: Vec<Vec<usize>>) -> NodeState {
        NodeState::root(build_instance(Graph::from_edges(n, edges), weights, lists).unwrap())
    }

    #[test]
    fn hungarian_small() {
        let cost = vec![vec![4, 1, 3], vec![2, 0, 5], vec![3, 2, 2]];
        let (m, total) = hungarian(&cost);
        assert_eq!(total, 5);
        let mut cols = m.clone();
        cols.sort();
        assert_eq!(cols, vec![0, 1, 2]);
    }

    #[test]
    fn completeness_check() {
        let inst = build_instance(Graph::new(2), vec![1, 1], vec![vec![0], vec![1]]).unwrap();
        assert!(all_complete(inst.graph(), &partition_colors(&inst)));
        let inst = build_instance(Graph::from_edges(2, &[(0, 1)]), vec![1], vec![vec![0]; 2]).unwrap();
        assert!(all_complete(inst.graph(), &partition_colors(&inst)));
        let inst = build_instance(Graph::new(2), vec![1], vec![vec![0]; 2]).unwrap();
        assert!(!all_complete(inst.graph(), &partition_colors(&inst)));
        let inst = build_instance(Graph::from_edges(3, &[(0, 1)]), vec![1; 3], vec![vec![0, 1, 2]; 3]).unwrap();
        assert!(!all_complete(inst.graph(), &partition_colors(&inst)));
    }

    #[test]
    fn adjacent_pair_uses_both_colors() {
        let s = node(2, &[(0, 1)], vec![5, 3], vec![vec![0, 1]; 2]);
        assert_eq!(solve_assignment(&s).unwrap().unwrap().weight, 8);
    }

    #[test]
    fn dummy_absorbs_expensive_color() {
        let s = node(1, &[], vec![5, 3], vec![vec![0, 1]]);
        let c = solve_assignment(&s).unwrap().unwrap();
        assert_eq!(c.assignment, vec![1]);
        assert_eq!(c.weight, 3);
    }

    #[test]
    fn too_few_colors_is_infeasible() {
        let s = node(3, &[(0, 1), (1, 2), (0, 2)], vec![1, 1], vec![vec![0, 1]; 3]);
        assert_eq!(solve_assignment(&s).unwrap(), None);
    }

    #[test]
    fn no_perfect_matching_is_infeasible() {
        // both vertices need color 0, a third color exists elsewhere
        let s = node(3, &[(0, 1)], vec![1, 1, 1], vec![vec![0], vec![0], vec![1, 2]]);
        assert_eq!(solve_assignment(&s).unwrap(), None);
    }
}
