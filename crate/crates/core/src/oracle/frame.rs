//! Pauli-frame propagation: tracks how injected errors move through the
//! circuit using only the controlled-phase propagation rules.

use alloc::vec;
use alloc::vec::Vec;

use super::circuit::{Circuit, Op};
use super::pauli::{propagate_pair, Pauli};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    errors: Vec<Option<Pauli>>,
}

impl Frame {
    pub fn new(qubits: usize) -> Self {
        Frame {
            errors: vec![None; qubits],
        }
    }

    pub fn get(&self, q: usize) -> Option<Pauli> {
        self.errors[q]
    }

    pub fn inject(&mut self, q: usize, p: Pauli) {
        self.errors[q] = Pauli::compose(self.errors[q], Some(p));
    }

    pub fn clear(&mut self) {
        self.errors.iter_mut().for_each(|e| *e = None);
    }

    /// Advances the frame over `op`. For a measurement returns whether the
    /// recorded outcome is flipped.
    pub fn apply(&mut self, op: Op) -> Option<bool> {
        match op {
            Op::Prepare(q) => {
                self.errors[q] = None;
                None
            }
            Op::Cz(a, b) => {
                let (ea, eb) = propagate_pair(self.errors[a], self.errors[b]);
                self.errors[a] = ea;
                self.errors[b] = eb;
                None
            }
            Op::Transmit(_) => None,
            Op::MeasureX(q) => {
                let flip = self.errors[q].is_some_and(Pauli::has_z);
                self.errors[q] = None;
                Some(flip)
            }
        }
    }

    /// Whether the residual error anticommutes with the graph-state generator
    /// `X_v prod Z_u` over `neighbors`.
    pub fn flips_generator(&self, v: usize, neighbors: &[usize]) -> bool {
        let mut odd = self.errors[v].is_some_and(Pauli::has_z);
        for &u in neighbors {
            odd ^= self.errors[u].is_some_and(Pauli::has_x);
        }
        odd
    }
}

/// Pushes `kind` on `qubit`, injected just before step `site`, through the
/// rest of `circuit`. Returns the measured qubits whose outcomes flip, in
/// measurement order, and the residual frame.
pub fn propagate_fault(circuit: &Circuit, site: usize, qubit: usize, kind: Pauli) -> (Vec<usize>, Frame) {
    let mut frame = Frame::new(circuit.qubits());
    frame.inject(qubit, kind);
    let mut flipped = Vec::new();
    for step in &circuit.steps()[site.min(circuit.steps().len())..] {
        if let (Op::MeasureX(q), Some(true)) = (step.op, frame.apply(step.op)) {
            flipped.push(q);
        }
    }
    (flipped, frame)
}
