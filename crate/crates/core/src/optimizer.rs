//! Repeater-count optimization per link, code comparison over distance and
//! whole-network evaluation.

use alloc::string::String;
use alloc::vec::Vec;

use crate::codes::{CodeSpec, LogicalRates};
use crate::error::{Error, Result};
use crate::error_model::{node_rates, station_rates, HardwareParams, StationRates};
use crate::metrics::{
    combine_sign_errors, cost_performance, effective_secret_fraction, fidelity_bounds, line_success_probability,
    secret_fraction, stabilizer_error_rate, CostInputs, StabilizerConvention,
};
use crate::network::{Degrees, NetworkGraph};

/// Figure of merit `Q` in the cost-performance ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quality {
    /// Success probability times the asymptotic BB84 secret fraction.
    #[default]
    SecretFraction,
    /// Success probability times the fidelity lower bound of the pair.
    FidelityLowerBound,
}

/// Inclusive, even range of repeater counts to scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepeaterRange {
    min: u32,
    max: u32,
}

impl RepeaterRange {
    pub fn new(min: u32, max: u32) -> Result<Self> {
        if min == 0 || min % 2 == 1 || max % 2 == 1 || min > max {
            return Err(Error::InvalidRepeaterRange { min, max });
        }
        Ok(RepeaterRange { min, max })
    }

    pub fn min(self) -> u32 {
        self.min
    }

    pub fn max(self) -> u32 {
        self.max
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (self.min..=self.max).step_by(2)
    }
}

impl Default for RepeaterRange {
    fn default() -> Self {
        RepeaterRange { min: 2, max: 2000 }
    }
}

/// Options shared by every link evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinkSettings {
    pub range: RepeaterRange,
    pub convention: StabilizerConvention,
    pub quality: Quality,
}

/// Every intermediate of one `(L, w)` evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkPoint {
    pub length_km: f64,
    pub repeaters: u32,
    pub spacing_km: f64,
    /// Physical rates of one repeater station.
    pub station: StationRates,
    /// Logical rates of one repeater station.
    pub logical: LogicalRates,
    /// Logical rates of the sending and receiving end nodes.
    pub ends: [LogicalRates; 2],
    pub success: f64,
    pub e_a: f64,
    pub e_b: f64,
    pub secret_fraction: f64,
    pub effective_rate: f64,
    pub quality: f64,
    pub cost: f64,
}

/// End-node degrees of a single link, sending end first.
pub const LINK_ENDS: [Degrees; 2] = [
    Degrees {
        total: 1,
        incoming: 0,
        outgoing: 1,
    },
    Degrees {
        total: 1,
        incoming: 1,
        outgoing: 0,
    },
];

pub fn evaluate_link(
    length_km: f64,
    repeaters: u32,
    code: &CodeSpec,
    params: &HardwareParams,
    settings: &LinkSettings,
) -> Result<LinkPoint> {
    if !(length_km > 0.0) || length_km.is_infinite() {
        return Err(Error::InvalidParameter {
            name: "L_km",
            value: length_km,
        });
    }
    let spacing_km = length_km / (f64::from(repeaters) + 1.0);
    let station = station_rates(params, spacing_km)?;
    let logical = code.rates(station.unnoticed, station.noticed)?;
    let end = |d: Degrees| -> Result<LogicalRates> {
        let r = node_rates(params, d, spacing_km)?;
        code.rates(r.unnoticed, r.noticed)
    };
    let ends = [end(LINK_ENDS[0])?, end(LINK_ENDS[1])?];
    let counted = [(logical.flip, settings.convention.counted(repeaters))];
    let e_a = combine_sign_errors(&counted, ends[0].flip, &[ends[1].flip]);
    let e_b = combine_sign_errors(&counted, ends[1].flip, &[ends[0].flip]);
    let success = line_success_probability(logical.success, repeaters, (ends[0].success, ends[1].success));
    let secret = secret_fraction(e_a, e_b)?;
    let effective_rate = effective_secret_fraction(success, secret);
    let quality = match settings.quality {
        Quality::SecretFraction => effective_rate,
        Quality::FidelityLowerBound => success * (1.0 - e_a - e_b).max(0.0),
    };
    let cost = cost_performance(&CostInputs {
        qubits_per_station: code.n,
        repeaters,
        length_km,
        quality,
    })?;
    Ok(LinkPoint {
        length_km,
        repeaters,
        spacing_km,
        station,
        logical,
        ends,
        success,
        e_a,
        e_b,
        secret_fraction: secret,
        effective_rate,
        quality,
        cost,
    })
}

/// Evaluates every repeater count in the range.
pub fn scan_link(
    length_km: f64,
    code: &CodeSpec,
    params: &HardwareParams,
    settings: &LinkSettings,
) -> Result<Vec<LinkPoint>> {
    settings
        .range
        .iter()
        .map(|w| evaluate_link(length_km, w, code, params, settings))
        .collect()
}

/// Repeater count minimising the cost-performance ratio of a link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkOptimum {
    pub repeaters: u32,
    pub cost: f64,
    pub spacing_km: f64,
    pub point: LinkPoint,
}

/// Exhaustive scan; ties go to the smallest repeater count and points with
/// zero quality never win.
pub fn optimize_link(
    length_km: f64,
    code: &CodeSpec,
    params: &HardwareParams,
    settings: &LinkSettings,
) -> Result<LinkOptimum> {
    let mut best: Option<LinkPoint> = None;
    for w in settings.range.iter() {
        let p = evaluate_link(length_km, w, code, params, settings)?;
        if p.quality > 0.0 && best.map_or(true, |b| p.cost < b.cost) {
            best = Some(p);
        }
    }
    let point = best.ok_or(Error::Infeasible {
        min: settings.range.min(),
        max: settings.range.max(),
    })?;
    Ok(LinkOptimum {
        repeaters: point.repeaters,
        cost: point.cost,
        spacing_km: point.spacing_km,
        point,
    })
}

/// One `(L, code)` cell of a code comparison; `None` when infeasible.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub length_km: f64,
    pub code: String,
    pub optimum: Option<LinkOptimum>,
}

impl SweepRow {
    pub fn cost(&self) -> f64 {
        self.optimum.map_or(f64::INFINITY, |o| o.cost)
    }
}

/// Optimizes every code at every length, lengths outermost.
pub fn compare_codes(
    lengths: &[f64],
    codes: &[CodeSpec],
    params: &HardwareParams,
    settings: &LinkSettings,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(lengths.len() * codes.len());
    for &length_km in lengths {
        for code in codes {
            rows.push(sweep_cell(length_km, code, params, settings)?);
        }
    }
    Ok(rows)
}

/// A single comparison cell; infeasibility becomes an empty cell.
pub fn sweep_cell(length_km: f64, code: &CodeSpec, params: &HardwareParams, settings: &LinkSettings) -> Result<SweepRow> {
    let optimum = match optimize_link(length_km, code, params, settings) {
        Ok(o) => Some(o),
        Err(Error::Infeasible { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        length_km,
        code: code.name.clone(),
        optimum,
    })
}

/// Smallest swept length from which code `better` has a strictly lower cost
/// than code `worse` at every longer swept length.
pub fn crossover_length(rows: &[SweepRow], better: &str, worse: &str) -> Option<f64> {
    let mut lengths: Vec<f64> = rows.iter().map(|r| r.length_km).collect();
    lengths.sort_by(f64::total_cmp);
    lengths.dedup();
    let cost = |code: &str, l: f64| {
        rows.iter()
            .find(|r| r.code == code && r.length_km == l)
            .map(SweepRow::cost)
    };
    let mut crossover = None;
    for &l in lengths.iter().rev() {
        match (cost(better, l), cost(worse, l)) {
            (Some(b), Some(w)) if b < w => crossover = Some(l),
            _ => break,
        }
    }
    crossover
}

/// How repeater counts are chosen when evaluating a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RepeaterPolicy {
    /// Use the counts stored on the links, rounding odd counts up.
    #[default]
    Fixed,
    /// Optimize each link on its own as an isolated two-node line.
    PerEdgeOptimal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkReport {
    pub link: usize,
    pub repeaters: u32,
    pub spacing_km: f64,
    pub logical: LogicalRates,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeReport {
    pub node: usize,
    pub degrees: Degrees,
    pub logical: LogicalRates,
    /// Probability that the node's stabilizer carries the wrong sign.
    pub error_rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkSummary {
    pub nodes: usize,
    pub edges: usize,
    pub cycles: usize,
    pub total_repeaters: u64,
    pub max_degree: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkReport {
    /// The network with the repeater counts actually used.
    pub network: NetworkGraph,
    pub links: Vec<LinkReport>,
    pub nodes: Vec<NodeReport>,
    pub fidelity_lower: f64,
    pub fidelity_upper: f64,
    /// Probability that no station or node aborts.
    pub success: f64,
    pub summary: NetworkSummary,
}

impl NetworkReport {
    pub fn max_error_rate(&self) -> f64 {
        self.nodes.iter().map(|n| n.error_rate).fold(0.0, f64::max)
    }
}

pub fn evaluate_network(
    net: &NetworkGraph,
    code: &CodeSpec,
    params: &HardwareParams,
    policy: RepeaterPolicy,
    settings: &LinkSettings,
) -> Result<NetworkReport> {
    if net.nodes().is_empty() {
        return Err(Error::Empty("network nodes"));
    }
    params.validate()?;
    let mut net = net.clone();
    for li in 0..net.links().len() {
        let link = net.links()[li];
        let w = match policy {
            RepeaterPolicy::Fixed if link.repeaters % 2 == 1 => {
                log::warn!(
                    "link {}-{}: odd repeater count {} rounded up to {}",
                    net.nodes()[link.tail].id,
                    net.nodes()[link.head].id,
                    link.repeaters,
                    link.repeaters + 1
                );
                link.repeaters + 1
            }
            RepeaterPolicy::Fixed => link.repeaters,
            RepeaterPolicy::PerEdgeOptimal => optimize_link(link.length_km, code, params, settings)?.repeaters,
        };
        net.set_repeaters(li, w);
    }

    let mut links = Vec::with_capacity(net.links().len());
    let mut success = 1.0;
    for (li, link) in net.links().iter().enumerate() {
        let r = station_rates(params, link.spacing_km())?;
        let logical = code.rates(r.unnoticed, r.noticed)?;
        success *= line_success_probability(logical.success, link.repeaters, (1.0, 1.0));
        links.push(LinkReport {
            link: li,
            repeaters: link.repeaters,
            spacing_km: link.spacing_km(),
            logical,
        });
    }
    let mut node_logical = Vec::with_capacity(net.nodes().len());
    for v in 0..net.nodes().len() {
        let degrees = net.degrees(v)?;
        let r = node_rates(params, degrees, net.node_spacing_km(v))?;
        let logical = code.rates(r.unnoticed, r.noticed)?;
        success *= logical.success;
        node_logical.push((degrees, logical));
    }

    let rg = net.expand();
    let link_flip: Vec<f64> = links.iter().map(|l| l.logical.flip).collect();
    let node_flip: Vec<f64> = node_logical.iter().map(|(_, l)| l.flip).collect();
    let mut nodes = Vec::with_capacity(node_logical.len());
    for (v, &(degrees, logical)) in node_logical.iter().enumerate() {
        nodes.push(NodeReport {
            node: v,
            degrees,
            logical,
            error_rate: stabilizer_error_rate(&rg, v, &link_flip, &node_flip, settings.convention)?,
        });
    }
    let rates: Vec<f64> = nodes.iter().map(|n| n.error_rate).collect();
    let (fidelity_lower, fidelity_upper) = fidelity_bounds(&rates)?;
    let graph = net.graph();
    let summary = NetworkSummary {
        nodes: graph.vertex_count(),
        edges: graph.edge_count(),
        cycles: graph.circuit_rank(),
        total_repeaters: net.total_repeaters(),
        max_degree: nodes.iter().map(|n| n.degrees.total).max().unwrap_or(0),
    };
    Ok(NetworkReport {
        network: net,
        links,
        nodes,
        fidelity_lower,
        fidelity_upper,
        success,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn settings(min: u32, max: u32) -> LinkSettings {
        LinkSettings {
            range: RepeaterRange::new(min, max).unwrap(),
            ..LinkSettings::default()
        }
    }

    #[test]
    fn ranges_must_be_even_and_positive() {
        assert!(RepeaterRange::new(0, 10).is_err());
        assert!(RepeaterRange::new(3, 10).is_err());
        assert!(RepeaterRange::new(2, 11).is_err());
        assert!(RepeaterRange::new(12, 10).is_err());
        assert_eq!(RepeaterRange::new(2, 8).unwrap().iter().collect::<Vec<_>>(), [2, 4, 6, 8]);
    }

    #[test]
    fn noiseless_link_picks_fewest_repeaters() {
        let mut p = HardwareParams::default();
        p.attenuation_length_km = 1e12;
        let o = optimize_link(100.0, &CodeSpec::unencoded(), &p, &settings(2, 40)).unwrap();
        assert_eq!(o.repeaters, 2);
        assert!(1.0 - o.point.success < 1e-9);
        assert!((o.cost - 2.0 / 100.0).abs() < 1e-9);
    }

    #[test]
    fn cost_chain_is_reproducible_from_intermediates() {
        let p = HardwareParams::uniform_unnoticed(1e-4);
        let code = CodeSpec::steane(7).unwrap();
        let pt = evaluate_link(100.0, 20, &code, &p, &LinkSettings::default()).unwrap();
        let again = cost_performance(&CostInputs {
            qubits_per_station: 7,
            repeaters: 20,
            length_km: 100.0,
            quality: pt.success * secret_fraction(pt.e_a, pt.e_b).unwrap(),
        })
        .unwrap();
        assert_eq!(pt.cost, again);
        assert!((pt.spacing_km - 100.0 / 21.0).abs() < 1e-12);
    }

    #[test]
    fn optimum_beats_every_scanned_point() {
        let p = HardwareParams::uniform_unnoticed(1e-4);
        let code = CodeSpec::steane(7).unwrap();
        let s = settings(2, 400);
        let o = optimize_link(100.0, &code, &p, &s).unwrap();
        for pt in scan_link(100.0, &code, &p, &s).unwrap() {
            assert!(o.cost <= pt.cost);
        }
    }

    #[test]
    fn hopeless_link_is_infeasible() {
        let p = HardwareParams::uniform_unnoticed(0.2);
        let r = optimize_link(100.0, &CodeSpec::unencoded(), &p, &settings(2, 20));
        assert_eq!(r, Err(Error::Infeasible { min: 2, max: 20 }));
        let rows = compare_codes(&[100.0], &[CodeSpec::unencoded()], &p, &settings(2, 20)).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].optimum.is_none());
        assert!(compare_codes(&[100.0], &[], &p, &settings(2, 20)).unwrap().is_empty());
    }

    #[test]
    fn crossover_needs_a_suffix_of_wins() {
        let row = |l: f64, code: &str, cost: Option<f64>| SweepRow {
            length_km: l,
            code: code.into(),
            optimum: cost.map(|c| {
                let p = evaluate_link(10.0, 2, &CodeSpec::unencoded(), &HardwareParams::default(), &LinkSettings::default())
                    .unwrap();
                LinkOptimum {
                    repeaters: 2,
                    cost: c,
                    spacing_km: 1.0,
                    point: p,
                }
            }),
        };
        let rows = vec![
            row(1.0, "a", Some(1.0)),
            row(1.0, "b", Some(2.0)),
            row(2.0, "a", Some(3.0)),
            row(2.0, "b", Some(2.0)),
            row(3.0, "a", Some(1.0)),
            row(3.0, "b", None),
            row(4.0, "a", Some(1.0)),
            row(4.0, "b", Some(5.0)),
        ];
        assert_eq!(crossover_length(&rows, "a", "b"), Some(3.0));
        assert_eq!(crossover_length(&rows, "b", "a"), None);
    }

    #[test]
    fn single_edge_network_matches_link() {
        let p = HardwareParams::uniform_unnoticed(1e-3);
        let code = CodeSpec::steane(2).unwrap();
        let s = LinkSettings::default();
        let mut net = NetworkGraph::new();
        net.add_node("A", None).unwrap();
        net.add_node("B", None).unwrap();
        net.add_link("A", "B", 150.0, 12).unwrap();
        let report = evaluate_network(&net, &code, &p, RepeaterPolicy::Fixed, &s).unwrap();
        let pt = evaluate_link(150.0, 12, &code, &p, &s).unwrap();
        assert_eq!(report.nodes[0].error_rate, pt.e_a);
        assert_eq!(report.nodes[1].error_rate, pt.e_b);
        assert!((report.success - pt.success).abs() < 1e-15);
    }

    #[test]
    fn odd_counts_round_up() {
        let mut net = NetworkGraph::new();
        net.add_node("A", None).unwrap();
        net.add_node("B", None).unwrap();
        net.add_link("A", "B", 50.0, 5).unwrap();
        let r = evaluate_network(
            &net,
            &CodeSpec::unencoded(),
            &HardwareParams::default(),
            RepeaterPolicy::Fixed,
            &LinkSettings::default(),
        )
        .unwrap();
        assert_eq!(r.links[0].repeaters, 6);
        assert_eq!(r.summary.total_repeaters, 6);
    }
}
