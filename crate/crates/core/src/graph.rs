//! Simple undirected graphs on vertices `0..n` and local complementation.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Undirected simple graph with sorted adjacency sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(vertex_count: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); vertex_count],
        }
    }

    /// Builds a graph from an edge list. Self-loops and repeated edges are rejected.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(vertex_count);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edges(n, &edges).expect("star edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Graph::from_edges(n, &edges).expect("complete edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n > 2 {
            g.add_edge(n - 1, 0).expect("closing edge is new");
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: v,
                count: self.adj.len(),
            })
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::SelfLoop(alloc::format!("{a}")));
        }
        if !self.adj[a].insert(b) {
            return Err(Error::DuplicateEdge(
                alloc::format!("{a}"),
                alloc::format!("{b}"),
            ));
        }
        self.adj[b].insert(a);
        Ok(())
    }

    pub fn toggle_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b);
        if !self.adj[a].remove(&b) {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        } else {
            self.adj[b].remove(&a);
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(a).is_some_and(|s| s.contains(&b))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nbrs) in self.adj.iter().enumerate() {
            for &b in nbrs.range(a + 1..) {
                out.push((a, b));
            }
        }
        out
    }

    /// Toggles every edge between two neighbours of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Graph> {
        self.check(v)?;
        let mut g = self.clone();
        let nbrs: Vec<usize> = self.adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                g.toggle_edge(a, b);
            }
        }
        Ok(g)
    }

    /// Connected-component label of every vertex; labels are assigned in
    /// order of the smallest vertex of each component.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if label[u] == usize::MAX {
                        label[u] = next;
                        stack.push(u);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Number of independent cycles, |E| - |V| + components.
    pub fn circuit_rank(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertex_count()
    }
}
