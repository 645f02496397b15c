use fixedbitset::FixedBitSet;

/// Vertex subsets are plain bitsets over `0..n`.
pub type VertexSet = FixedBitSet;

/// Undirected simple graph on the dense vertex range `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds `{u, v}`. Returns false if the edge was already present.
    ///
    /// Panics on self-loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop on vertex {u}");
        assert!(u < self.n() && v < self.n(), "edge ({u},{v}) out of range");
        let fresh = !self.adj[u].contains(v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        fresh
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn empty_set(&self) -> VertexSet {
        FixedBitSet::with_capacity(self.n())
    }

    pub fn is_stable(&self, set: &VertexSet) -> bool {
        set.ones().all(|v| self.adj[v].is_disjoint(set))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.ones().all(|v| {
            let mut others = set.clone();
            others.set(v, false);
            others.is_subset(&self.adj[v])
        })
    }

    /// Subgraph induced by `keep`, with vertices renumbered densely in
    /// increasing order. Also returns the old-to-new renaming.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<Option<usize>>) {
        let mut rename = vec![None; self.n()];
        for (new, old) in keep.ones().enumerate() {
            rename[old] = Some(new);
        }
        let mut g = Graph::new(keep.count_ones(..));
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (rename[u], rename[v]) {
                g.add_edge(a, b);
            }
        }
        (g, rename)
    }
}
