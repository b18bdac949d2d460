//! Breadth-first search for local-complementation sequences between graphs.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::tableau::Tableau;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_VERTICES: usize = 12;
pub const DEFAULT_STATE_BOUND: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LcCheck {
    /// Applying local complementations at these vertices, in order, turns the
    /// first graph into the second.
    Equivalent(Vec<usize>),
    /// The whole orbit was explored (or an invariant differs).
    NotEquivalent,
    /// The search stopped after visiting `explored` graphs.
    BoundExceeded { explored: usize },
}

impl LcCheck {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, LcCheck::Equivalent(_))
    }
}

type Adjacency = [u16; MAX_VERTICES];

fn adjacency(g: &Graph) -> Adjacency {
    let mut adj = [0u16; MAX_VERTICES];
    for (a, b) in g.edges() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    adj
}

fn key(adj: &Adjacency, n: usize) -> u128 {
    let mut k = 0u128;
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if adj[a] >> b & 1 == 1 {
                k |= 1 << bit;
            }
            bit += 1;
        }
    }
    k
}

fn complement_at(adj: &Adjacency, v: usize) -> Adjacency {
    let mut out = *adj;
    let nbrs = adj[v];
    let mut m = nbrs;
    while m != 0 {
        let u = m.trailing_zeros() as usize;
        m &= m - 1;
        out[u] ^= nbrs & !(1 << u);
    }
    out
}

/// Sorted vertex sets of the connected components; unchanged by local
/// complementation.
fn partition(g: &Graph) -> Vec<Vec<usize>> {
    let labels = g.component_labels();
    let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in labels.iter().enumerate() {
        parts.entry(c).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = parts.into_values().collect();
    out.sort();
    out
}

pub fn check_lu_equivalence(g1: &Graph, g2: &Graph) -> Result<LcCheck> {
    check_lu_equivalence_bounded(g1, g2, DEFAULT_STATE_BOUND)
}

/// Searches the local-complementation orbit of `g1` for `g2`, visiting at
/// most `bound` distinct graphs.
pub fn check_lu_equivalence_bounded(g1: &Graph, g2: &Graph, bound: usize) -> Result<LcCheck> {
    let n = g1.vertex_count();
    for g in [g1, g2] {
        if g.vertex_count() > MAX_VERTICES {
            return Err(Error::OracleScale {
                qubits: g.vertex_count(),
                limit: MAX_VERTICES,
            });
        }
    }
    if g2.vertex_count() != n || partition(g1) != partition(g2) {
        return Ok(LcCheck::NotEquivalent);
    }
    let start = adjacency(g1);
    let goal = key(&adjacency(g2), n);
    let start_key = key(&start, n);
    if start_key == goal {
        return Ok(LcCheck::Equivalent(Vec::new()));
    }
    // Each visited graph remembers its parent and the vertex that led to it.
    let mut parent: BTreeMap<u128, (u128, usize)> = BTreeMap::new();
    parent.insert(start_key, (start_key, usize::MAX));
    let mut queue = VecDeque::from([start]);
    while let Some(adj) = queue.pop_front() {
        let k = key(&adj, n);
        for v in 0..n {
            if adj[v].count_ones() < 2 {
                continue;
            }
            let next = complement_at(&adj, v);
            let nk = key(&next, n);
            if parent.contains_key(&nk) {
                continue;
            }
            parent.insert(nk, (k, v));
            if nk == goal {
                let mut seq = Vec::new();
                let mut cur = nk;
                while cur != start_key {
                    let (p, v) = parent[&cur];
                    seq.push(v);
                    cur = p;
                }
                seq.reverse();
                return Ok(LcCheck::Equivalent(seq));
            }
            if parent.len() >= bound {
                return Ok(LcCheck::BoundExceeded { explored: parent.len() });
            }
            queue.push_back(next);
        }
    }
    Ok(LcCheck::NotEquivalent)
}

/// Applies the local Clifford that maps the graph state of `g` onto the
/// graph state of its local complement at `v`: a quarter turn about X on
/// `v` and a quarter turn about -Z on each neighbour.
pub fn apply_local_complement(t: &mut Tableau, g: &Graph, v: usize) {
    t.h(v);
    t.s(v);
    t.h(v);
    for u in g.neighbors(v) {
        for _ in 0..3 {
            t.s(u);
        }
    }
}
