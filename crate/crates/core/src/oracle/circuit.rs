//! Operation sequence that builds the repeater-graph state and measures out
//! the stations.
//!
//! For a link `u -> v` with stations `r_1..r_w`:
//!
//! * station 0 (at `u`): prepare `r_1`, `CZ(u, r_1)`, transmit `r_1`
//! * station `k` in `1..w`: prepare `r_{k+1}`, `CZ(r_k, r_{k+1})`,
//!   measure `r_k`, transmit `r_{k+1}`
//! * station `w`: `CZ(r_w, v)`, measure `r_w`
//!
//! A link without stations is a single `CZ(u, v)` at station 0. Every
//! network node is prepared before any link is processed.

use alloc::vec::Vec;

use crate::network::{RepeaterGraph, VertexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    /// Fresh qubit in |+>.
    Prepare(usize),
    Cz(usize, usize),
    /// Sends a qubit to the next station; a noiseless identity otherwise.
    Transmit(usize),
    MeasureX(usize),
}

impl Op {
    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Op::Prepare(q) | Op::Transmit(q) | Op::MeasureX(q) => (q, None),
            Op::Cz(a, b) => (a, Some(b)),
        };
        core::iter::once(a).chain(b)
    }
}

/// Where an operation happens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Station {
    Node(usize),
    /// Station `index` of `link`, counted from the tail (0 is the tail node).
    Link { link: usize, index: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub op: Op,
    pub station: Station,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ordering {
    /// Each station measures as soon as its gate is done.
    #[default]
    Streaming,
    /// Every measurement is deferred until the whole state is built.
    Batch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    steps: Vec<Step>,
    qubits: usize,
}

impl Circuit {
    pub fn build(rg: &RepeaterGraph, ordering: Ordering) -> Self {
        let net = rg.network();
        let mut steps = Vec::new();
        for v in 0..rg.node_count() {
            steps.push(Step {
                op: Op::Prepare(v),
                station: Station::Node(v),
            });
        }
        for (li, link) in net.links().iter().enumerate() {
            let chain = rg.chain(li);
            let w = chain.len();
            let at = |index: usize| Station::Link {
                link: li,
                index: index as u32,
            };
            let mut push = |op, index| steps.push(Step { op, station: at(index) });
            if w == 0 {
                push(Op::Cz(link.tail, link.head), 0);
                continue;
            }
            push(Op::Prepare(chain[0]), 0);
            push(Op::Cz(link.tail, chain[0]), 0);
            push(Op::Transmit(chain[0]), 0);
            for k in 1..w {
                push(Op::Prepare(chain[k]), k);
                push(Op::Cz(chain[k - 1], chain[k]), k);
                push(Op::MeasureX(chain[k - 1]), k);
                push(Op::Transmit(chain[k]), k);
            }
            push(Op::Cz(chain[w - 1], link.head), w);
            push(Op::MeasureX(chain[w - 1]), w);
        }
        if ordering == Ordering::Batch {
            let (measure, mut rest): (Vec<Step>, Vec<Step>) =
                steps.into_iter().partition(|s| matches!(s.op, Op::MeasureX(_)));
            rest.extend(measure);
            steps = rest;
        }
        Circuit {
            steps,
            qubits: rg.vertex_count(),
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    /// Index of the step that measures `q`.
    pub fn measurement_step(&self, q: usize) -> Option<usize> {
        self.steps.iter().position(|s| s.op == Op::MeasureX(q))
    }
}

/// Outcomes whose record is lost when qubit `q` suffers a heralded failure:
/// its own outcome and that of the next station downstream.
pub fn erased_by(rg: &RepeaterGraph, q: usize) -> Vec<usize> {
    let net = rg.network();
    let mut out = Vec::new();
    match rg.kind(q) {
        VertexKind::Repeater { link, position } => {
            out.push(q);
            if let Some(&next) = rg.chain(link).get(position as usize) {
                out.push(next);
            }
        }
        VertexKind::Node(v) => {
            for (li, l) in net.incident_links(v) {
                if l.tail == v {
                    out.extend(rg.chain(li).first());
                }
            }
        }
    }
    out
}
