//! Full stabilizer simulation of the two-step protocol: build the repeater
//! graph state, measure every station in X, then correct the network nodes.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::circuit::{erased_by, Circuit, Op, Ordering};
use super::pauli::Pauli;
use super::tableau::{PauliRow, StabilizerGroup, Tableau, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::network::{NetworkGraph, RepeaterGraph};

/// A Pauli error acting on `qubit` just before circuit step `site`
/// (`site == steps.len()` means after the last step).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliError {
    pub site: usize,
    pub qubit: usize,
    pub kind: Pauli,
    pub noticed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Plus,
    Minus,
    Erased,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Byproduct {
    Identity,
    Z,
    /// A station in the main stabilizer was erased.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolTrace {
    /// `(vertex, outcome)` for every station, in vertex order.
    pub outcomes: Vec<(usize, Outcome)>,
    /// Correction applied at each network node.
    pub byproducts: Vec<Byproduct>,
    /// State of the network nodes after corrections.
    pub final_state: StabilizerGroup,
    /// Graph state of the network graph.
    pub target: StabilizerGroup,
    neighbors: Vec<Vec<usize>>,
}

impl ProtocolTrace {
    pub fn reproduces_target(&self) -> bool {
        self.final_state == self.target
    }

    /// For each node, whether its generator `X_v prod Z_u` has sign -1 in
    /// the final state, or `None` if it is not a stabilizer up to sign.
    pub fn sign_errors(&self) -> Vec<Option<bool>> {
        (0..self.neighbors.len())
            .map(|v| {
                let g = PauliRow {
                    x: 1 << v,
                    z: self.neighbors[v].iter().fold(0, |m, &u| m | 1 << u),
                    negative: false,
                };
                self.final_state.contains_up_to_sign(&g)
            })
            .collect()
    }
}

/// Checks that the expanded network fits the oracle and has even links.
pub(crate) fn prepare(net: &NetworkGraph) -> Result<(RepeaterGraph, Vec<Vec<usize>>)> {
    let rg = net.expand();
    if rg.vertex_count() > MAX_QUBITS {
        return Err(Error::OracleScale {
            qubits: rg.vertex_count(),
            limit: MAX_QUBITS,
        });
    }
    let supports = (0..rg.node_count())
        .map(|v| rg.main_stabilizer_support(v))
        .collect::<Result<Vec<_>>>()?;
    Ok((rg, supports))
}

/// Runs the protocol with measurement randomness drawn from `seed`.
pub fn run_protocol(net: &NetworkGraph, seed: u64, errors: &[PauliError], ordering: Ordering) -> Result<ProtocolTrace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run_protocol_with(net, errors, ordering, &mut |_| rng.gen())
}

/// Runs the protocol; `choose(q)` decides random outcomes of measuring `q`
/// (`true` for -1).
pub fn run_protocol_with(
    net: &NetworkGraph,
    errors: &[PauliError],
    ordering: Ordering,
    choose: &mut dyn FnMut(usize) -> bool,
) -> Result<ProtocolTrace> {
    let (rg, supports) = prepare(net)?;
    let circuit = Circuit::build(&rg, ordering);
    let n = rg.vertex_count();
    let steps = circuit.steps();
    for e in errors {
        if e.qubit >= n {
            return Err(Error::VertexOutOfRange { index: e.qubit, count: n });
        }
        if e.site > steps.len() {
            return Err(Error::InvalidParameter {
                name: "site",
                value: e.site as f64,
            });
        }
    }

    let mut tableau = Tableau::zero_state(n)?;
    let mut negative = vec![false; n];
    let mut erased = vec![false; n];
    let inject = |tableau: &mut Tableau, erased: &mut [bool], site: usize| {
        for e in errors.iter().filter(|e| e.site == site) {
            let row = PauliRow {
                x: u64::from(e.kind.has_x()) << e.qubit,
                z: u64::from(e.kind.has_z()) << e.qubit,
                negative: false,
            };
            tableau.apply_pauli(&row);
            if e.noticed {
                for q in erased_by(&rg, e.qubit) {
                    erased[q] = true;
                }
            }
        }
    };
    for (i, step) in steps.iter().enumerate() {
        inject(&mut tableau, &mut erased, i);
        match step.op {
            Op::Prepare(q) => tableau.h(q),
            Op::Cz(a, b) => tableau.cz(a, b),
            Op::Transmit(_) => {}
            Op::MeasureX(q) => {
                negative[q] = tableau.measure_x(q, &mut || choose(q)).negative;
            }
        }
    }
    inject(&mut tableau, &mut erased, steps.len());

    let outcomes: Vec<(usize, Outcome)> = rg
        .repeaters()
        .map(|q| {
            let o = if erased[q] {
                Outcome::Erased
            } else if negative[q] {
                Outcome::Minus
            } else {
                Outcome::Plus
            };
            (q, o)
        })
        .collect();

    let mut byproducts = Vec::with_capacity(rg.node_count());
    for (v, support) in supports.iter().enumerate() {
        let stations = support.iter().filter(|&&q| q != v);
        let b = if stations.clone().any(|&q| erased[q]) {
            Byproduct::Undetermined
        } else if stations.fold(false, |acc, &q| acc ^ negative[q]) {
            tableau.apply_pauli(&PauliRow::z_on(v));
            Byproduct::Z
        } else {
            Byproduct::Identity
        };
        byproducts.push(b);
    }

    let nodes: Vec<usize> = (0..rg.node_count()).collect();
    Ok(ProtocolTrace {
        outcomes,
        byproducts,
        final_state: tableau.restrict(&nodes),
        target: StabilizerGroup::graph_state(&net.graph())?,
        neighbors: nodes.iter().map(|&v| net.neighbors(v)).collect(),
    })
}
