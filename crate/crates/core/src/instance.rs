use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Color identifier, dense in `0..num_declared_colors`.
pub type Color = usize;

/// A weighted list coloring instance.
///
/// Colors that appear in no list are kept in the weight table (so ids stay
/// stable) but are not part of the active color set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    weights: Vec<u64>,
    colors: Vec<Color>,
    lists: Vec<Vec<Color>>,
}

/// Validates and normalizes an instance. Color `j` is declared with weight
/// `weights[j]`; lists are sorted and deduplicated.
pub fn build_instance(graph: Graph, weights: Vec<u64>, lists: Vec<Vec<Color>>) -> Result<Instance> {
    Instance::new(graph, weights, lists)
}

impl Instance {
    pub fn new(graph: Graph, weights: Vec<u64>, mut lists: Vec<Vec<Color>>) -> Result<Self> {
        if lists.len() != graph.n() {
            return Err(Error::ListCount {
                expected: graph.n(),
                got: lists.len(),
            });
        }
        let mut active = BTreeSet::new();
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if let Some(&bad) = list.iter().find(|&&j| j >= weights.len()) {
                return Err(Error::UnknownColor { vertex: v, color: bad });
            }
            if list.is_empty() {
                return Err(Error::EmptyList(v));
            }
            active.extend(list.iter().copied());
        }
        Ok(Instance {
            graph,
            weights,
            colors: active.into_iter().collect(),
            lists,
        })
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Active colors, ascending.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn num_declared_colors(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn weight(&self, j: Color) -> u64 {
        self.weights[j]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    #[inline]
    pub fn list(&self, v: usize) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn allows(&self, v: usize, j: Color) -> bool {
        self.lists[v].binary_search(&j).is_ok()
    }

    /// Sum of the weights of all active colors.
    pub fn total_weight(&self) -> u64 {
        self.colors.iter().map(|&j| self.weights[j]).sum()
    }

    /// `V_j`: vertices whose list contains `j`.
    pub fn vertices_with(&self, j: Color) -> VertexSet {
        let mut s = self.graph.empty_set();
        for v in 0..self.n() {
            if self.allows(v, j) {
                s.insert(v);
            }
        }
        s
    }

    pub(crate) fn into_parts(self) -> (Graph, Vec<u64>, Vec<Vec<Color>>) {
        (self.graph, self.weights, self.lists)
    }
}

/// A complete list coloring of some instance, with its active-color weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListColoring {
    pub assignment: Vec<Color>,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongLength { expected: usize, got: usize },
    NotInList { vertex: usize, color: Color },
    Conflict { u: usize, v: usize, color: Color },
    WeightMismatch { claimed: u64, actual: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { expected, got } => {
                write!(f, "assignment covers {got} vertices, instance has {expected}")
            }
            Violation::NotInList { vertex, color } => {
                write!(f, "vertex {vertex} colored {color}, which is not in its list")
            }
            Violation::Conflict { u, v, color } => {
                write!(f, "edge ({u},{v}) has both endpoints colored {color}")
            }
            Violation::WeightMismatch { claimed, actual } => {
                write!(f, "claimed weight {claimed}, actual weight {actual}")
            }
        }
    }
}

/// Independent validity check: list membership, properness on every edge.
/// Returns the weight of the distinct colors used.
pub fn check_coloring(inst: &Instance, assignment: &[Color]) -> std::result::Result<u64, Violation> {
    if assignment.len() != inst.n() {
        return Err(Violation::WrongLength {
            expected: inst.n(),
            got: assignment.len(),
        });
    }
    for (v, &j) in assignment.iter().enumerate() {
        if !inst.lists[v].contains(&j) {
            return Err(Violation::NotInList { vertex: v, color: j });
        }
    }
    for (u, v) in inst.graph.edges() {
        if assignment[u] == assignment[v] {
            return Err(Violation::Conflict {
                u,
                v,
                color: assignment[u],
            });
        }
    }
    let used: BTreeSet<Color> = assignment.iter().copied().collect();
    Ok(used.into_iter().map(|j| inst.weights[j]).sum())
}

impl ListColoring {
    /// Checks the coloring against `inst`, including its recorded weight.
    pub fn validate(&self, inst: &Instance) -> std::result::Result<(), Violation> {
        let actual = check_coloring(inst, &self.assignment)?;
        if actual != self.weight {
            return Err(Violation::WeightMismatch {
                claimed: self.weight,
                actual,
            });
        }
        Ok(())
    }

    pub fn from_assignment(inst: &Instance, assignment: Vec<Color>) -> std::result::Result<Self, Violation> {
        let weight = check_coloring(inst, &assignment)?;
        Ok(ListColoring { assignment, weight })
    }
}
