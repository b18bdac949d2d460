//! Stabilizer error rates, fidelity bounds, key rates and the
//! cost-performance ratio.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::error_model::{p_odd, p_odd_tilde};
use crate::math::powi;
use crate::network::RepeaterGraph;

/// How many stations of a link enter a node's stabilizer error rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StabilizerConvention {
    /// Only the stations in the main stabilizer, `w / 2` per link.
    #[default]
    HalfRepeaters,
    /// Every station of the link, `w` per link.
    AllRepeaters,
}

impl StabilizerConvention {
    pub fn counted(self, repeaters: u32) -> u32 {
        match self {
            StabilizerConvention::HalfRepeaters => repeaters / 2,
            StabilizerConvention::AllRepeaters => repeaters,
        }
    }
}

/// Combines independent flip sources into a sign-error probability: each
/// `(rate, count)` pair contributes `count` stations of logical flip rate
/// `rate`, followed by the node's own rate and its neighbours' rates.
pub fn combine_sign_errors(stations: &[(f64, u32)], own: f64, neighbors: &[f64]) -> f64 {
    let mut sources: Vec<f64> = stations.iter().map(|&(f, count)| p_odd(f, count)).collect();
    sources.push(own);
    sources.extend_from_slice(neighbors);
    p_odd_tilde(&sources)
}

/// Probability that the main stabilizer of network node `node` carries the
/// wrong sign after byproduct correction.
///
/// `link_flip[l]` is the logical flip rate of every station on link `l`,
/// `node_flip[v]` the logical flip rate of network node `v`.
pub fn stabilizer_error_rate(
    rg: &RepeaterGraph,
    node: usize,
    link_flip: &[f64],
    node_flip: &[f64],
    convention: StabilizerConvention,
) -> Result<f64> {
    let net = rg.network();
    if node >= net.nodes().len() {
        return Err(Error::VertexOutOfRange {
            index: node,
            count: net.nodes().len(),
        });
    }
    if link_flip.len() != net.links().len() || node_flip.len() != net.nodes().len() {
        return Err(Error::Empty("a rate for every link and node"));
    }
    let mut stations = Vec::new();
    let mut neighbors = Vec::new();
    for (li, link) in net.incident_links(node) {
        // Rejects odd links.
        rg.link_support(node, li)?;
        stations.push((link_flip[li], convention.counted(link.repeaters)));
        neighbors.push(node_flip[link.other_end(node).expect("incident link")]);
    }
    Ok(combine_sign_errors(&stations, node_flip[node], &neighbors))
}

/// Lower and upper bounds on the fidelity with the target graph state.
pub fn fidelity_bounds(rates: &[f64]) -> Result<(f64, f64)> {
    if rates.is_empty() {
        return Err(Error::Empty("stabilizer error rates"));
    }
    let sum: f64 = rates.iter().sum();
    let max = rates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(((1.0 - sum).max(0.0), 1.0 - max))
}

pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter { name: "p", value: p });
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * libm::log2(p) - (1.0 - p) * libm::log2(1.0 - p))
}

/// Asymptotic BB84 secret fraction. Rates above one half are capped.
pub fn secret_fraction(e_a: f64, e_b: f64) -> Result<f64> {
    let clamp = |name: &'static str, e: f64| -> Result<f64> {
        if !(e >= 0.0) || e > 1.0 {
            return Err(Error::InvalidParameter { name, value: e });
        }
        if e > 0.5 {
            log::warn!("{name}={e} exceeds 1/2, capped");
            return Ok(0.5);
        }
        Ok(e)
    };
    let h_a = binary_entropy(clamp("e_A", e_a)?)?;
    let h_b = binary_entropy(clamp("e_B", e_b)?)?;
    Ok((1.0 - h_a - h_b).max(0.0))
}

pub fn effective_secret_fraction(success: f64, secret: f64) -> f64 {
    success * secret
}

/// Probability that every station of a line and both end nodes succeed.
pub fn line_success_probability(station: f64, repeaters: u32, ends: (f64, f64)) -> f64 {
    powi(station, repeaters) * ends.0 * ends.1
}

/// Inputs of the cost-performance ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostInputs {
    /// Qubits per station (code block length).
    pub qubits_per_station: u32,
    pub repeaters: u32,
    pub length_km: f64,
    pub quality: f64,
}

/// Qubits per kilometre per unit quality; infinite when the quality is zero.
pub fn cost_performance(ci: &CostInputs) -> Result<f64> {
    if ci.qubits_per_station == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
        });
    }
    if !(ci.length_km > 0.0) || ci.length_km.is_infinite() {
        return Err(Error::InvalidParameter {
            name: "L_km",
            value: ci.length_km,
        });
    }
    if !(0.0..=1.0).contains(&ci.quality) {
        return Err(Error::InvalidParameter {
            name: "Q",
            value: ci.quality,
        });
    }
    if ci.quality == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(f64::from(ci.qubits_per_station) * f64::from(ci.repeaters) / (ci.length_km * ci.quality))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::NetworkGraph;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    fn line(w: u32) -> RepeaterGraph {
        let mut n = NetworkGraph::new();
        n.add_node("A", None).unwrap();
        n.add_node("B", None).unwrap();
        n.add_link("A", "B", 100.0, w).unwrap();
        n.expand()
    }

    #[test]
    fn stabilizer_rate_examples() {
        let rg = line(4);
        let half = StabilizerConvention::HalfRepeaters;
        assert_eq!(stabilizer_error_rate(&rg, 0, &[0.0], &[0.0, 0.0], half).unwrap(), 0.0);
        assert!(close(stabilizer_error_rate(&rg, 0, &[0.01], &[0.0, 0.0], half).unwrap(), 0.0198));
        let all = stabilizer_error_rate(&rg, 0, &[0.01], &[0.0, 0.0], StabilizerConvention::AllRepeaters).unwrap();
        assert!(close(all, p_odd(0.01, 4)));
        let sat = stabilizer_error_rate(&rg, 0, &[0.5], &[0.4, 0.3], half).unwrap();
        assert!(sat <= 0.5);
        assert!(stabilizer_error_rate(&line(3), 0, &[0.01], &[0.0, 0.0], half).is_err());
    }

    #[test]
    fn fidelity_examples() {
        assert_eq!(fidelity_bounds(&[0.0, 0.0]).unwrap(), (1.0, 1.0));
        let (lo, hi) = fidelity_bounds(&[0.01, 0.02, 0.03]).unwrap();
        assert!(close(lo, 0.94) && close(hi, 0.97));
        assert_eq!(fidelity_bounds(&[0.1]).unwrap(), (0.9, 0.9));
        assert!(fidelity_bounds(&[]).is_err());
        assert_eq!(fidelity_bounds(&[0.6, 0.7]).unwrap().0, 0.0);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(close(binary_entropy(0.5).unwrap(), 1.0));
        assert!((binary_entropy(0.11).unwrap() - 0.49992).abs() < 1e-5);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn secret_fraction_examples() {
        assert_eq!(secret_fraction(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(secret_fraction(0.5, 0.0).unwrap(), 0.0);
        let r = secret_fraction(0.11, 0.11).unwrap();
        assert!((r - (1.0 - 2.0 * binary_entropy(0.11).unwrap())).abs() < 1e-15);
        assert!(r > 1.5e-4 && r < 1.8e-4, "{r}");
        assert_eq!(secret_fraction(0.7, 0.0).unwrap(), 0.0);
        assert!(secret_fraction(-0.1, 0.0).is_err());
        assert!(secret_fraction(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn rate_and_success_examples() {
        assert_eq!(effective_secret_fraction(1.0, 0.3), 0.3);
        assert_eq!(effective_secret_fraction(0.0, 0.3), 0.0);
        assert!(close(effective_secret_fraction(0.5, 0.8), 0.4));
        assert_eq!(line_success_probability(1.0, 10, (1.0, 1.0)), 1.0);
        assert!((line_success_probability(0.99, 10, (1.0, 1.0)) - 0.904_382).abs() < 1e-6);
        assert_eq!(line_success_probability(0.99, 10, (0.0, 1.0)), 0.0);
    }

    #[test]
    fn cost_examples() {
        let ci = CostInputs {
            qubits_per_station: 7,
            repeaters: 10,
            length_km: 100.0,
            quality: 0.5,
        };
        assert!(close(cost_performance(&ci).unwrap(), 1.4));
        assert_eq!(cost_performance(&CostInputs { repeaters: 0, ..ci }).unwrap(), 0.0);
        assert!(close(cost_performance(&CostInputs { quality: 1.0, ..ci }).unwrap(), 0.7));
        assert_eq!(cost_performance(&CostInputs { quality: 0.0, ..ci }).unwrap(), f64::INFINITY);
        assert!(cost_performance(&CostInputs { length_km: 0.0, ..ci }).is_err());
        assert!(cost_performance(&CostInputs { qubits_per_station: 0, ..ci }).is_err());
        assert!(cost_performance(&CostInputs { quality: 1.5, ..ci }).is_err());
    }
}
