//! Monte-Carlo estimates of the stabilizer error rates of network nodes.
//!
//! Trials are split into blocks; block `b` draws from the ChaCha8 stream `b`
//! of the run seed, so blocks can run in any order or in parallel and merge
//! into the same totals.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::circuit::{erased_by, Circuit, Op, Ordering};
use super::frame::Frame;
use super::pauli::Pauli;
use crate::codes::CodeSpec;
use crate::error::{Error, Result};
use crate::error_model::{node_error_vector, node_rates, station_error_vector, station_rates, HardwareParams};
use crate::network::{Degrees, NetworkGraph, RepeaterGraph, VertexKind};

pub const MIN_TRIALS: u64 = 10_000;
pub const BLOCK_TRIALS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// Each station's outcome flip is the parity of its independent error
    /// sources; each node draws independent Z and X errors. With a code,
    /// stations and nodes flip at the code's logical rate.
    #[default]
    Sources,
    /// Depolarizing faults at every preparation, gate leg, transmission and
    /// measurement, pushed through the circuit by the propagation rules.
    /// Unencoded only.
    Circuit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum SiteModel {
    Sources { sources: [f64; 5], erase: f64 },
    Logical { flip: f64, success: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Fault {
    /// X or Z with equal probability on the qubit.
    Depolarize { qubit: usize, noticed: f64, unnoticed: f64 },
    /// Flips the recorded outcome with probability one half.
    Readout { qubit: usize, noticed: f64, unnoticed: f64 },
}

#[derive(Debug, Clone)]
struct CircuitModel {
    circuit: Circuit,
    /// Faults acting after each step.
    faults: Vec<Vec<Fault>>,
}

/// Sign-error counts per node over accepted (non-aborted) trials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tally {
    pub trials: u64,
    pub accepted: u64,
    pub errors: Vec<u64>,
}

impl Tally {
    pub fn new(nodes: usize) -> Self {
        Tally {
            trials: 0,
            accepted: 0,
            errors: vec![0; nodes],
        }
    }

    pub fn merge(&mut self, other: &Tally) {
        self.trials += other.trials;
        self.accepted += other.accepted;
        for (a, b) in self.errors.iter_mut().zip(&other.errors) {
            *a += b;
        }
    }

    pub fn estimates(&self) -> Vec<NodeEstimate> {
        let n = self.accepted as f64;
        self.errors
            .iter()
            .enumerate()
            .map(|(node, &k)| {
                let (rate, stderr) = if self.accepted == 0 {
                    (f64::NAN, f64::NAN)
                } else {
                    let p = k as f64 / n;
                    (p, libm::sqrt(p * (1.0 - p) / n))
                };
                NodeEstimate {
                    node,
                    rate,
                    stderr,
                    accepted: self.accepted,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeEstimate {
    pub node: usize,
    pub rate: f64,
    pub stderr: f64,
    pub accepted: u64,
}

/// A prepared Monte-Carlo experiment on one network.
#[derive(Debug, Clone)]
pub struct McScenario {
    rg: RepeaterGraph,
    stations_in_support: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
    stations: Vec<SiteModel>,
    nodes: Vec<SiteModel>,
    circuit: Option<CircuitModel>,
}

fn bernoulli<R: Rng>(rng: &mut R, p: f64) -> bool {
    p > 0.0 && rng.gen::<f64>() < p
}

fn parity<R: Rng>(rng: &mut R, sources: &[f64; 5]) -> bool {
    sources.iter().fold(false, |acc, &p| acc ^ bernoulli(rng, p))
}

impl McScenario {
    pub fn new(net: &NetworkGraph, params: &HardwareParams, code: Option<&CodeSpec>, sampling: Sampling) -> Result<Self> {
        params.validate()?;
        let rg = net.expand();
        let node_count = rg.node_count();
        let mut stations_in_support = Vec::with_capacity(node_count);
        for v in 0..node_count {
            let s = rg.main_stabilizer_support(v)?;
            stations_in_support.push(s.into_iter().filter(|&q| q != v).collect());
        }
        let neighbors = (0..node_count).map(|v| net.neighbors(v)).collect();

        let site = |degrees: Degrees, spacing: f64| -> Result<SiteModel> {
            let rates = node_rates(params, degrees, spacing)?;
            match code {
                None => Ok(SiteModel::Sources {
                    sources: node_error_vector(params, degrees),
                    erase: rates.noticed,
                }),
                Some(c) => {
                    let l = c.rates(rates.unnoticed, rates.noticed)?;
                    Ok(SiteModel::Logical {
                        flip: l.flip,
                        success: l.success,
                    })
                }
            }
        };
        let mut stations = Vec::new();
        for q in rg.repeaters() {
            let VertexKind::Repeater { link, .. } = rg.kind(q) else {
                unreachable!("repeaters follow the nodes")
            };
            let spacing = net.links()[link].spacing_km();
            let model = match code {
                None => SiteModel::Sources {
                    sources: station_error_vector(params),
                    erase: station_rates(params, spacing)?.noticed,
                },
                Some(_) => site(Degrees::STATION, spacing)?,
            };
            stations.push(model);
        }
        let nodes = (0..node_count)
            .map(|v| site(net.degrees(v)?, net.node_spacing_km(v)))
            .collect::<Result<Vec<_>>>()?;

        let circuit = match sampling {
            Sampling::Sources => None,
            Sampling::Circuit => {
                if code.is_some() {
                    return Err(Error::Unsupported("circuit sampling runs unencoded only"));
                }
                Some(circuit_model(&rg, params)?)
            }
        };
        Ok(McScenario {
            rg,
            stations_in_support,
            neighbors,
            stations,
            nodes,
            circuit,
        })
    }

    pub fn node_count(&self) -> usize {
        self.rg.node_count()
    }

    /// Blocks `(index, trials)` covering `trials` trials.
    pub fn blocks(trials: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let mut left = trials;
        let mut b = 0;
        while left > 0 {
            let t = left.min(BLOCK_TRIALS);
            out.push((b, t));
            left -= t;
            b += 1;
        }
        out
    }

    pub fn run_block(&self, seed: u64, block: u64, trials: u64) -> Tally {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(block);
        let mut tally = Tally::new(self.node_count());
        tally.trials = trials;
        let mut frame = Frame::new(self.rg.vertex_count());
        let mut flipped = vec![false; self.rg.vertex_count()];
        let mut erased = vec![false; self.rg.vertex_count()];
        for _ in 0..trials {
            frame.clear();
            flipped.iter_mut().for_each(|f| *f = false);
            let ok = match &self.circuit {
                None => self.sample_sources(&mut rng, &mut frame, &mut flipped),
                Some(cm) => {
                    erased.iter_mut().for_each(|e| *e = false);
                    self.sample_circuit(cm, &mut rng, &mut frame, &mut flipped, &mut erased)
                }
            };
            if !ok {
                continue;
            }
            tally.accepted += 1;
            for v in 0..self.node_count() {
                let mut odd = frame.flips_generator(v, &self.neighbors[v]);
                for &q in &self.stations_in_support[v] {
                    odd ^= flipped[q];
                }
                tally.errors[v] += u64::from(odd);
            }
        }
        tally
    }

    /// Returns `false` if the trial aborts.
    fn sample_sources(&self, rng: &mut ChaCha8Rng, frame: &mut Frame, flipped: &mut [bool]) -> bool {
        let mut ok = true;
        let offset = self.node_count();
        for (i, model) in self.stations.iter().enumerate() {
            flipped[offset + i] = match *model {
                SiteModel::Sources { ref sources, erase } => {
                    ok &= !bernoulli(rng, erase);
                    parity(rng, sources)
                }
                SiteModel::Logical { flip, success } => {
                    ok &= !bernoulli(rng, 1.0 - success);
                    bernoulli(rng, flip)
                }
            };
        }
        for (v, model) in self.nodes.iter().enumerate() {
            let (z, x) = match *model {
                SiteModel::Sources { ref sources, erase } => {
                    ok &= !bernoulli(rng, erase);
                    (parity(rng, sources), parity(rng, sources))
                }
                SiteModel::Logical { flip, success } => {
                    ok &= !bernoulli(rng, 1.0 - success);
                    (bernoulli(rng, flip), bernoulli(rng, flip))
                }
            };
            if z {
                frame.inject(v, Pauli::Z);
            }
            if x {
                frame.inject(v, Pauli::X);
            }
        }
        ok
    }

    fn sample_circuit(
        &self,
        cm: &CircuitModel,
        rng: &mut ChaCha8Rng,
        frame: &mut Frame,
        flipped: &mut [bool],
        erased: &mut [bool],
    ) -> bool {
        let mut any_erased = false;
        for (step, faults) in cm.circuit.steps().iter().zip(&cm.faults) {
            let measured = frame.apply(step.op);
            if let (Op::MeasureX(q), Some(f)) = (step.op, measured) {
                flipped[q] ^= f;
            }
            for fault in faults {
                match *fault {
                    Fault::Depolarize {
                        qubit,
                        noticed,
                        unnoticed,
                    } => {
                        if bernoulli(rng, noticed) {
                            any_erased = true;
                            for q in erased_by(&self.rg, qubit) {
                                erased[q] = true;
                            }
                        } else if bernoulli(rng, unnoticed) {
                            let p = if rng.gen::<bool>() { Pauli::X } else { Pauli::Z };
                            frame.inject(qubit, p);
                        }
                    }
                    Fault::Readout {
                        qubit,
                        noticed,
                        unnoticed,
                    } => {
                        if bernoulli(rng, noticed) {
                            any_erased = true;
                            erased[qubit] = true;
                        } else if bernoulli(rng, unnoticed) && rng.gen::<bool>() {
                            flipped[qubit] ^= true;
                        }
                    }
                }
            }
        }
        !any_erased
    }
}

fn circuit_model(rg: &RepeaterGraph, params: &HardwareParams) -> Result<CircuitModel> {
    let circuit = Circuit::build(rg, Ordering::Streaming);
    let net = rg.network();
    let mut faults = Vec::with_capacity(circuit.steps().len());
    for step in circuit.steps() {
        let f = match step.op {
            Op::Prepare(q) => vec![Fault::Depolarize {
                qubit: q,
                noticed: params.preparation.noticed,
                unnoticed: params.preparation.unnoticed,
            }],
            Op::Cz(a, b) => [a, b]
                .into_iter()
                .map(|q| Fault::Depolarize {
                    qubit: q,
                    noticed: params.gate.noticed,
                    unnoticed: params.gate.unnoticed,
                })
                .collect(),
            Op::Transmit(q) => {
                let VertexKind::Repeater { link, .. } = rg.kind(q) else {
                    unreachable!("only stations are transmitted")
                };
                let spacing = net.links()[link].spacing_km();
                vec![Fault::Depolarize {
                    qubit: q,
                    noticed: params.transmission_noticed(spacing)?,
                    unnoticed: params.transmission.unnoticed,
                }]
            }
            Op::MeasureX(q) => vec![Fault::Readout {
                qubit: q,
                noticed: params.measurement.noticed,
                unnoticed: params.measurement.unnoticed,
            }],
        };
        faults.push(f);
    }
    Ok(CircuitModel { circuit, faults })
}

/// Sequential Monte-Carlo estimate of every node's stabilizer error rate.
pub fn monte_carlo_node_error(
    net: &NetworkGraph,
    params: &HardwareParams,
    trials: u64,
    seed: u64,
    code: Option<&CodeSpec>,
    sampling: Sampling,
) -> Result<Vec<NodeEstimate>> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidParameter {
            name: "trials",
            value: trials as f64,
        });
    }
    let scenario = McScenario::new(net, params, code, sampling)?;
    let mut tally = Tally::new(scenario.node_count());
    for (block, count) in McScenario::blocks(trials) {
        tally.merge(&scenario.run_block(seed, block, count));
    }
    Ok(tally.estimates())
}
