//! Grouping of indistinguishable colors.
//!
//! Two colors are indistinguishable when they have the same weight and the
//! same vertex set `V_j`; since `G^j` is the subgraph induced by `V_j`, equal
//! vertex sets mean equal subgraphs.

use std::collections::HashMap;

use crate::graph::VertexSet;
use crate::instance::{Color, Instance};

/// One class `C^k` of indistinguishable colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClass {
    /// Smallest color id in the class.
    pub rep: Color,
    /// All colors of the class, ascending.
    pub members: Vec<Color>,
    pub weight: u64,
    /// `V_k`.
    pub vertices: VertexSet,
}

impl ColorClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Whether the class needs a capacity row, i.e. `|V_k| >= |C^k| + 1`.
    pub fn is_bounded(&self) -> bool {
        self.vertices.count_ones(..) > self.members.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorPartition {
    classes: Vec<ColorClass>,
    class_of: HashMap<Color, usize>,
}

pub fn partition_colors(inst: &Instance) -> ColorPartition {
    let mut classes: Vec<ColorClass> = Vec::new();
    let mut by_key: HashMap<(u64, VertexSet), usize> = HashMap::new();
    let mut class_of = HashMap::new();
    // colors() is ascending, so the first member seen is the representative
    for &j in inst.colors() {
        let vertices = inst.vertices_with(j);
        let key = (inst.weight(j), vertices);
        let idx = match by_key.get(&key) {
            Some(&idx) => {
                classes[idx].members.push(j);
                idx
            }
            None => {
                let idx = classes.len();
                classes.push(ColorClass {
                    rep: j,
                    members: vec![j],
                    weight: key.0,
                    vertices: key.1.clone(),
                });
                by_key.insert(key, idx);
                idx
            }
        };
        class_of.insert(j, idx);
    }
    ColorPartition { classes, class_of }
}

impl ColorPartition {
    /// Classes ordered by representative.
    pub fn classes(&self) -> &[ColorClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing color `j`, if `j` is active.
    pub fn class_index_of(&self, j: Color) -> Option<usize> {
        self.class_of.get(&j).copied()
    }

    pub fn class_by_rep(&self, rep: Color) -> Option<&ColorClass> {
        self.class_index_of(rep)
            .map(|i| &self.classes[i])
            .filter(|c| c.rep == rep)
    }

    pub fn representatives(&self) -> Vec<Color> {
        self.classes.iter().map(|c| c.rep).collect()
    }

    pub fn bounded_classes(&self) -> impl Iterator<Item = (usize, &ColorClass)> {
        self.classes.iter().enumerate().filter(|(_, c)| c.is_bounded())
    }
}
