//! Branch-and-price node state and the instance transformations applied
//! between nodes: singleton-list fixing, edge addition (DIFFER) and vertex
//! merging (SAME).
//!
//! A node keeps a map from every root vertex to the vertex that currently
//! represents it, so that a coloring of the node instance can be lifted back
//! to a coloring of the root instance.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::{Color, Instance, ListColoring};
use crate::partition::ColorPartition;

/// The node subproblem has no list coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Infeasible;

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("subproblem is infeasible")
    }
}

impl std::error::Error for Infeasible {}

#[derive(Debug, Clone)]
pub struct NodeState {
    root: Arc<Instance>,
    instance: Instance,
    vertex_of: Vec<Option<usize>>,
    fixed: Vec<(usize, Color)>,
    depth: usize,
}

impl NodeState {
    pub fn root(root: impl Into<Arc<Instance>>) -> Self {
        let root = root.into();
        NodeState {
            instance: (*root).clone(),
            vertex_of: (0..root.n()).map(Some).collect(),
            fixed: Vec::new(),
            depth: 0,
            root,
        }
    }

    pub fn root_instance(&self) -> &Instance {
        &self.root
    }

    /// The residual instance at this node. Colors already used by fixed
    /// vertices carry weight zero here since they are already paid for.
    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Root vertex -> current vertex, `None` once the vertex has been fixed.
    pub fn vertex_of(&self) -> &[Option<usize>] {
        &self.vertex_of
    }

    /// `(root vertex, color)` pairs fixed by singleton preprocessing.
    pub fn fixed_assignments(&self) -> &[(usize, Color)] {
        &self.fixed
    }

    pub fn fixed_colors(&self) -> BTreeSet<Color> {
        self.fixed.iter().map(|&(_, j)| j).collect()
    }

    /// Root weight of the distinct fixed colors.
    pub fn fixed_weight(&self) -> u64 {
        self.fixed_colors().into_iter().map(|j| self.root.weight(j)).sum()
    }

    /// Root vertices represented by current vertex `v`.
    pub fn members(&self, v: usize) -> Vec<usize> {
        self.vertex_of
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == Some(v))
            .map(|(r, _)| r)
            .collect()
    }

    /// Maps current vertices of `self` to current vertices of a descendant,
    /// `None` for vertices fixed on the way.
    pub fn vertex_map_to(&self, child: &NodeState) -> Vec<Option<usize>> {
        let mut map = vec![None; self.instance.n()];
        for (r, cur) in self.vertex_of.iter().enumerate() {
            if let Some(c) = cur {
                map[*c] = child.vertex_of[r];
            }
        }
        map
    }

    /// Lifts a coloring of the node instance to the root instance.
    pub fn lift(&self, current: &[Color]) -> Result<ListColoring> {
        if current.len() != self.instance.n() {
            return Err(Error::ReconstructionBug(format!(
                "node coloring has {} entries, node has {} vertices",
                current.len(),
                self.instance.n()
            )));
        }
        let mut assignment = vec![usize::MAX; self.root.n()];
        for &(r, j) in &self.fixed {
            assignment[r] = j;
        }
        for (r, cur) in self.vertex_of.iter().enumerate() {
            if let Some(c) = cur {
                assignment[r] = current[*c];
            }
        }
        ListColoring::from_assignment(&self.root, assignment).map_err(|v| Error::ReconstructionBug(v.to_string()))
    }

    fn with(&self, instance: Instance, vertex_of: Vec<Option<usize>>, depth: usize) -> NodeState {
        NodeState {
            root: Arc::clone(&self.root),
            instance,
            vertex_of,
            fixed: self.fixed.clone(),
            depth,
        }
    }
}

/// Fixes every vertex with a one-color list, removes it and deletes its
/// color from the neighbors' lists, until no singleton list remains.
pub fn preprocess_singletons(state: NodeState) -> Result<NodeState, Infeasible> {
    let (graph, mut weights, mut lists) = state.instance.clone().into_parts();
    let n = graph.n();
    let mut fixed_color: Vec<Option<Color>> = vec![None; n];
    while let Some(u) = (0..n).find(|&u| fixed_color[u].is_none() && lists[u].len() == 1) {
        let j = lists[u][0];
        fixed_color[u] = Some(j);
        weights[j] = 0;
        for z in graph.neighbors(u).ones() {
            if fixed_color[z].is_some() {
                continue;
            }
            if let Ok(pos) = lists[z].binary_search(&j) {
                lists[z].remove(pos);
                if lists[z].is_empty() {
                    return Err(Infeasible);
                }
            }
        }
    }
    if fixed_color.iter().all(Option::is_none) {
        return Ok(state);
    }

    let mut keep = graph.empty_set();
    for v in 0..n {
        keep.set(v, fixed_color[v].is_none());
    }
    let (residual, rename) = graph.induced(&keep);
    let lists = lists
        .into_iter()
        .enumerate()
        .filter(|(v, _)| fixed_color[*v].is_none())
        .map(|(_, l)| l)
        .collect();
    let instance = Instance::new(residual, weights, lists).expect("residual lists are non-empty");

    let mut fixed = state.fixed.clone();
    let mut vertex_of = Vec::with_capacity(state.vertex_of.len());
    for (r, cur) in state.vertex_of.iter().enumerate() {
        match cur {
            Some(c) => match fixed_color[*c] {
                Some(j) => {
                    fixed.push((r, j));
                    vertex_of.push(None);
                }
                None => vertex_of.push(rename[*c]),
            },
            None => vertex_of.push(None),
        }
    }
    Ok(NodeState {
        root: state.root,
        instance,
        vertex_of,
        fixed,
        depth: state.depth,
    })
}

fn check_branch_pair(inst: &Instance, u: usize, v: usize) {
    assert!(u != v, "branching on a single vertex {u}");
    assert!(!inst.graph().has_edge(u, v), "branching on adjacent pair ({u},{v})");
    assert!(
        inst.list(u).iter().any(|j| inst.allows(v, *j)),
        "branching pair ({u},{v}) has disjoint lists"
    );
}

/// Child in which `u` and `v` must receive different colors: adds edge `(u, v)`.
pub fn branch_differ(state: &NodeState, u: usize, v: usize) -> NodeState {
    check_branch_pair(&state.instance, u, v);
    let (mut graph, weights, lists) = state.instance.clone().into_parts();
    graph.add_edge(u, v);
    let instance = Instance::new(graph, weights, lists).expect("lists unchanged");
    state.with(instance, state.vertex_of.clone(), state.depth + 1)
}

/// Child in which `u` and `v` share a color: `v` is merged into `u`, which
/// inherits `N(v)` and keeps `L(u) ∩ L(v)`. Vertices above `v` shift down by
/// one.
pub fn branch_same(state: &NodeState, u: usize, v: usize) -> NodeState {
    check_branch_pair(&state.instance, u, v);
    let (graph, weights, mut lists) = state.instance.clone().into_parts();
    let n = graph.n();
    let shift = |w: usize| if w > v { w - 1 } else { w };
    let rename: Vec<usize> = (0..n).map(|w| if w == v { shift(u) } else { shift(w) }).collect();

    let mut merged = Graph::new(n - 1);
    for (a, b) in graph.edges() {
        merged.add_edge(rename[a], rename[b]);
    }
    let common: Vec<Color> = lists[u].iter().copied().filter(|j| lists[v].binary_search(j).is_ok()).collect();
    lists[u] = common;
    lists.remove(v);
    let instance = Instance::new(merged, weights, lists).expect("intersection is non-empty");

    let vertex_of = state.vertex_of.iter().map(|c| c.map(|c| rename[c])).collect();
    state.with(instance, vertex_of, state.depth + 1)
}

/// Turns an integral selection of node columns into a coloring of the root
/// instance.
///
/// Columns are visited in lexicographic order of their vertex lists; a
/// vertex covered more than once goes to the first column covering it.
/// Within a class, the columns that own at least one vertex get distinct
/// member colors in ascending order.
pub fn reconstruct(state: &NodeState, partition: &ColorPartition, selection: &[(VertexSet, Color)]) -> Result<ListColoring> {
    let n = state.instance.n();
    let mut order: Vec<(Vec<usize>, Color)> = selection.iter().map(|(s, k)| (s.ones().collect(), *k)).collect();
    order.sort();

    let mut current = vec![usize::MAX; n];
    let mut next_member = vec![0usize; partition.len()];
    for (vertices, rep) in &order {
        let owned: Vec<usize> = vertices.iter().copied().filter(|&v| current[v] == usize::MAX).collect();
        if owned.is_empty() {
            continue;
        }
        let idx = partition
            .class_by_rep(*rep)
            .and_then(|_| partition.class_index_of(*rep))
            .ok_or_else(|| Error::ReconstructionBug(format!("unknown class representative {rep}")))?;
        let class = &partition.classes()[idx];
        let color = *class.members.get(next_member[idx]).ok_or_else(|| {
            Error::ReconstructionBug(format!("class {rep} selected more than {} times", class.size()))
        })?;
        next_member[idx] += 1;
        for v in owned {
            current[v] = color;
        }
    }
    if let Some(v) = current.iter().position(|&c| c == usize::MAX) {
        return Err(Error::ReconstructionBug(format!("vertex {v} is not covered")));
    }
    state.lift(&current)
}
