//! Network graphs (nodes joined by long-distance links) and their expansion
//! into repeater graphs.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub label: Option<String>,
}

/// A link carries photons from `tail` to `head` through `repeaters` stations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub tail: usize,
    pub head: usize,
    pub length_km: f64,
    pub repeaters: u32,
}

impl Link {
    /// Distance between consecutive stations.
    pub fn spacing_km(&self) -> f64 {
        self.length_km / (f64::from(self.repeaters) + 1.0)
    }

    pub fn other_end(&self, node: usize) -> Option<usize> {
        if node == self.tail {
            Some(self.head)
        } else if node == self.head {
            Some(self.tail)
        } else {
            None
        }
    }
}

/// Total, incoming and outgoing degree of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Degrees {
    pub total: u32,
    pub incoming: u32,
    pub outgoing: u32,
}

impl Degrees {
    pub fn new(total: u32, incoming: u32, outgoing: u32) -> Result<Self> {
        if incoming.checked_add(outgoing) != Some(total) {
            return Err(Error::InconsistentDegrees {
                total,
                incoming,
                outgoing,
            });
        }
        Ok(Degrees {
            total,
            incoming,
            outgoing,
        })
    }

    /// Degrees of a repeater station inside a link.
    pub const STATION: Degrees = Degrees {
        total: 2,
        incoming: 1,
        outgoing: 1,
    };
}

/// Network nodes and oriented links between them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NetworkGraph {
    nodes: Vec<Node>,
    links: Vec<Link>,
}

impl NetworkGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: &str, label: Option<&str>) -> Result<usize> {
        if self.node_index(id).is_some() {
            return Err(Error::DuplicateVertex(id.to_string()));
        }
        self.nodes.push(Node {
            id: id.to_string(),
            label: label.map(ToString::to_string),
        });
        Ok(self.nodes.len() - 1)
    }

    /// Adds a link oriented from `tail` to `head`.
    pub fn add_link(&mut self, tail: &str, head: &str, length_km: f64, repeaters: u32) -> Result<usize> {
        let t = self
            .node_index(tail)
            .ok_or_else(|| Error::UnknownVertex(tail.to_string()))?;
        let h = self
            .node_index(head)
            .ok_or_else(|| Error::UnknownVertex(head.to_string()))?;
        self.add_link_between(t, h, length_km, repeaters)
    }

    pub fn add_link_between(&mut self, tail: usize, head: usize, length_km: f64, repeaters: u32) -> Result<usize> {
        for v in [tail, head] {
            if v >= self.nodes.len() {
                return Err(Error::VertexOutOfRange {
                    index: v,
                    count: self.nodes.len(),
                });
            }
        }
        if tail == head {
            return Err(Error::SelfLoop(self.nodes[tail].id.clone()));
        }
        if !(length_km.is_finite() && length_km >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "length_km",
                value: length_km,
            });
        }
        if self.link_between(tail, head).is_some() {
            return Err(Error::DuplicateEdge(
                self.nodes[tail].id.clone(),
                self.nodes[head].id.clone(),
            ));
        }
        self.links.push(Link {
            tail,
            head,
            length_km,
            repeaters,
        });
        Ok(self.links.len() - 1)
    }

    pub fn set_repeaters(&mut self, link: usize, repeaters: u32) {
        self.links[link].repeaters = repeaters;
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    /// Index of the link joining `a` and `b` in either orientation.
    pub fn link_between(&self, a: usize, b: usize) -> Option<usize> {
        self.links
            .iter()
            .position(|l| (l.tail == a && l.head == b) || (l.tail == b && l.head == a))
    }

    /// Links touching `node`, in link order.
    pub fn incident_links(&self, node: usize) -> impl Iterator<Item = (usize, &Link)> + '_ {
        self.links
            .iter()
            .enumerate()
            .filter(move |(_, l)| l.tail == node || l.head == node)
    }

    /// Network-node neighbours of `node`, sorted.
    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .incident_links(node)
            .filter_map(|(_, l)| l.other_end(node))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degrees(&self, node: usize) -> Result<Degrees> {
        if node >= self.nodes.len() {
            return Err(Error::VertexOutOfRange {
                index: node,
                count: self.nodes.len(),
            });
        }
        let mut d = Degrees::default();
        for (_, l) in self.incident_links(node) {
            d.total += 1;
            if l.head == node {
                d.incoming += 1;
            } else {
                d.outgoing += 1;
            }
        }
        Ok(d)
    }

    /// Node-level graph, ignoring repeaters.
    pub fn graph(&self) -> Graph {
        let edges: Vec<_> = self.links.iter().map(|l| (l.tail, l.head)).collect();
        Graph::from_edges(self.nodes.len(), &edges).expect("links are validated on insertion")
    }

    /// Station spacing seen by a node: the longest spacing of its links.
    pub fn node_spacing_km(&self, node: usize) -> f64 {
        self.incident_links(node)
            .map(|(_, l)| l.spacing_km())
            .fold(0.0, f64::max)
    }

    pub fn total_repeaters(&self) -> u64 {
        self.links.iter().map(|l| u64::from(l.repeaters)).sum()
    }

    /// Replaces every link by a chain of repeater stations.
    pub fn expand(&self) -> RepeaterGraph {
        let node_count = self.nodes.len();
        let total = node_count + self.total_repeaters() as usize;
        let mut graph = Graph::new(total);
        let mut kinds: Vec<VertexKind> = (0..node_count).map(VertexKind::Node).collect();
        let mut names: Vec<String> = self.nodes.iter().map(|n| n.id.clone()).collect();
        let mut incoming = alloc::vec![0u32; total];
        let mut outgoing = alloc::vec![0u32; total];
        let mut chains = Vec::with_capacity(self.links.len());

        for (li, link) in self.links.iter().enumerate() {
            let mut chain = Vec::with_capacity(link.repeaters as usize);
            for position in 1..=link.repeaters {
                chain.push(kinds.len());
                kinds.push(VertexKind::Repeater { link: li, position });
                names.push(format!(
                    "{}-{}#{}",
                    self.nodes[link.tail].id, self.nodes[link.head].id, position
                ));
            }
            let mut prev = link.tail;
            for &next in chain.iter().chain(core::iter::once(&link.head)) {
                graph.add_edge(prev, next).expect("chain edges are fresh");
                outgoing[prev] += 1;
                incoming[next] += 1;
                prev = next;
            }
            chains.push(chain);
        }

        RepeaterGraph {
            graph,
            kinds,
            names,
            incoming,
            outgoing,
            chains,
            network: self.clone(),
        }
    }
}

/// Role of a vertex in the repeater graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Node(usize),
    /// Station `position` (1-based, counted from the link's tail).
    Repeater { link: usize, position: u32 },
}

/// Expanded graph: network nodes occupy vertices `0..node_count`, followed by
/// the repeater chains of every link in link order.
#[derive(Debug, Clone, PartialEq)]
pub struct RepeaterGraph {
    graph: Graph,
    kinds: Vec<VertexKind>,
    names: Vec<String>,
    incoming: Vec<u32>,
    outgoing: Vec<u32>,
    chains: Vec<Vec<usize>>,
    network: NetworkGraph,
}

impl RepeaterGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn network(&self) -> &NetworkGraph {
        &self.network
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn node_count(&self) -> usize {
        self.network.nodes.len()
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    /// Repeater vertices of `link`, ordered from tail to head.
    pub fn chain(&self, link: usize) -> &[usize] {
        &self.chains[link]
    }

    pub fn repeaters(&self) -> impl Iterator<Item = usize> + '_ {
        self.node_count()..self.vertex_count()
    }

    pub fn degrees(&self, v: usize) -> Result<Degrees> {
        if v >= self.kinds.len() {
            return Err(Error::VertexOutOfRange {
                index: v,
                count: self.kinds.len(),
            });
        }
        Degrees::new(self.graph.degree(v) as u32, self.incoming[v], self.outgoing[v])
    }

    /// Stations of `link` at even distance 2, 4, ..., w from `node`.
    pub fn link_support(&self, node: usize, link: usize) -> Result<Vec<usize>> {
        let l = &self.network.links[link];
        if l.repeaters % 2 == 1 {
            return Err(Error::OddRepeaterCount {
                tail: self.network.nodes[l.tail].id.clone(),
                head: self.network.nodes[l.head].id.clone(),
                repeaters: l.repeaters,
            });
        }
        let chain = &self.chains[link];
        let w = chain.len();
        let out = if node == l.tail {
            (1..w).step_by(2).map(|i| chain[i]).collect()
        } else {
            (0..w.saturating_sub(1)).step_by(2).map(|i| chain[i]).collect()
        };
        Ok(out)
    }

    /// `node` plus every second station outward on each incident link, sorted.
    ///
    /// The product of graph-state generators over this set acts as X on the
    /// set and as Z exactly on the network neighbours of `node`.
    pub fn main_stabilizer_support(&self, node: usize) -> Result<Vec<usize>> {
        if node >= self.node_count() {
            return Err(Error::VertexOutOfRange {
                index: node,
                count: self.node_count(),
            });
        }
        let mut out = alloc::vec![node];
        for (li, _) in self.network.incident_links(node) {
            out.extend(self.link_support(node, li)?);
        }
        out.sort_unstable();
        Ok(out)
    }
}
