//! CSV renderings with a `#`-prefixed metadata block.

use repnet_core::optimizer::{NetworkReport, SweepRow};
use repnet_core::oracle::monte_carlo::NodeEstimate;

use crate::error::CliResult;

pub const SWEEP_COLUMNS: [&str; 13] = [
    "L_km", "code", "w", "L0_km", "f_u", "f_n", "fbar_u", "P_succ", "e_A", "e_B", "r_inf", "R", "C",
];

/// Ordered `key: value` lines written ahead of the data.
#[derive(Debug, Clone, Default)]
pub struct Metadata(Vec<(String, String)>);

impl Metadata {
    pub fn new(command: &str) -> Self {
        let mut m = Metadata::default();
        m.push("tool", format!("repnet {}", env!("CARGO_PKG_VERSION")));
        m.push("command", command);
        m
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.0.push((key.into(), value.to_string()));
    }

    fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("# {k}: {v}\n")).collect()
    }
}

fn finish(meta: &Metadata, w: csv::Writer<Vec<u8>>) -> CliResult<Vec<u8>> {
    let body = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    let mut out = meta.render().into_bytes();
    out.extend(body);
    Ok(out)
}

pub fn sweep_csv(meta: &Metadata, rows: &[SweepRow]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_COLUMNS)?;
    for row in rows {
        let mut rec = vec![row.length_km.to_string(), row.code.clone()];
        match &row.optimum {
            Some(o) => {
                let p = &o.point;
                rec.extend(
                    [
                        f64::from(p.repeaters),
                        p.spacing_km,
                        p.station.unnoticed,
                        p.station.noticed,
                        p.logical.flip,
                        p.success,
                        p.e_a,
                        p.e_b,
                        p.secret_fraction,
                        p.effective_rate,
                        p.cost,
                    ]
                    .iter()
                    .map(f64::to_string),
                );
            }
            None => rec.extend(std::iter::repeat(String::new()).take(SWEEP_COLUMNS.len() - 2)),
        }
        w.write_record(&rec)?;
    }
    finish(meta, w)
}

/// One row per node, then the two fidelity bounds in the `e_v` column.
pub fn network_csv(meta: &Metadata, report: &NetworkReport) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["node", "degree", "e_v"])?;
    for n in &report.nodes {
        let id = &report.network.nodes()[n.node].id;
        w.write_record([id.clone(), n.degrees.total.to_string(), n.error_rate.to_string()])?;
    }
    w.write_record(["fidelity_lower".to_string(), String::new(), report.fidelity_lower.to_string()])?;
    w.write_record(["fidelity_upper".to_string(), String::new(), report.fidelity_upper.to_string()])?;
    finish(meta, w)
}

/// A node's sampled and analytic error rates side by side.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub node: String,
    pub degree: u32,
    pub analytic: f64,
    pub sampled: NodeEstimate,
}

impl Comparison {
    /// Distance in standard errors; zero when both agree exactly.
    /// `None` when no trial was accepted.
    pub fn z_score(&self) -> Option<f64> {
        if self.sampled.accepted == 0 {
            return None;
        }
        let d = (self.sampled.rate - self.analytic).abs();
        Some(if d == 0.0 { 0.0 } else { d / self.sampled.stderr })
    }
}

pub fn simulate_csv(meta: &Metadata, rows: &[Comparison]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["node", "degree", "e_analytic", "e_sampled", "stderr", "accepted", "z", "check"])?;
    for r in rows {
        let (sampled, stderr, z, check) = match r.z_score() {
            Some(z) => (
                r.sampled.rate.to_string(),
                r.sampled.stderr.to_string(),
                z.to_string(),
                if z <= 3.0 { "ok" } else { "off" },
            ),
            None => (String::new(), String::new(), String::new(), "no-accepted-trials"),
        };
        w.write_record([
            r.node.clone(),
            r.degree.to_string(),
            r.analytic.to_string(),
            sampled,
            stderr,
            r.sampled.accepted.to_string(),
            z,
            check.to_string(),
        ])?;
    }
    finish(meta, w)
}
