//! Subcommand implementations. Everything is validated before any output
//! is written.

use std::path::Path;
use std::process::ExitCode;

use repnet_core::codes::CodeSpec;
use repnet_core::error_model::HardwareParams;
use repnet_core::graph::Graph;
use repnet_core::metrics::StabilizerConvention;
use repnet_core::optimizer::{evaluate_network, LinkSettings, Quality, RepeaterPolicy, RepeaterRange};
use repnet_core::oracle::circuit::Ordering;
use repnet_core::oracle::lc_search::{check_lu_equivalence_bounded, LcCheck};
use repnet_core::oracle::monte_carlo::Sampling;
use repnet_core::oracle::protocol::run_protocol;

use crate::cli::{self, Cli, Command, Convention, QualityArg, RepeatersArg, SamplingArg};
use crate::config::{echo, load_params};
use crate::error::{CliError, CliResult};
use crate::netfile::load_network;
use crate::output::emit;
use crate::parallel;
use crate::report::{network_csv, simulate_csv, sweep_csv, Comparison, Metadata};
use crate::trace::format_trace;

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Infeasible or negative result.
    Negative,
}

pub fn exit_code(result: CliResult<Status>) -> ExitCode {
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

pub fn run(cli: Cli) -> CliResult<Status> {
    match cli.command {
        Command::OptimizeLine(a) => optimize_line(&a),
        Command::AnalyzeNetwork(a) => analyze_network(&a),
        Command::Simulate(a) => simulate(&a),
        Command::LcCheck(a) => lc_check(&a),
    }
}

/// `100,200,400` or `start:stop:step` (inclusive).
pub fn parse_lengths(arg: &str) -> CliResult<Vec<f64>> {
    let bad = |why: &str| CliError::Usage(format!("--L `{arg}`: {why}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let values = if let Some((start, rest)) = arg.split_once(':') {
        let (stop, step) = rest.split_once(':').ok_or_else(|| bad("expected start:stop:step"))?;
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if !(step > 0.0) || stop < start {
            return Err(bad("need step > 0 and stop >= start"));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        (0..=count).map(|i| start + i as f64 * step).collect()
    } else {
        arg.split(',').map(num).collect::<CliResult<Vec<_>>>()?
    };
    if values.is_empty() || values.iter().any(|&l| !(l > 0.0) || l.is_infinite()) {
        return Err(bad("lengths must be positive"));
    }
    Ok(values)
}

fn params(path: Option<&Path>) -> CliResult<HardwareParams> {
    path.map_or(Ok(HardwareParams::default()), load_params)
}

fn code(s: &str) -> CliResult<CodeSpec> {
    Ok(s.parse::<CodeSpec>()?)
}

fn convention(c: Convention) -> StabilizerConvention {
    match c {
        Convention::A => StabilizerConvention::HalfRepeaters,
        Convention::D => StabilizerConvention::AllRepeaters,
    }
}

fn settings(model: &cli::Model, scan: &cli::Scan) -> CliResult<LinkSettings> {
    Ok(LinkSettings {
        range: RepeaterRange::new(scan.w_min, scan.w_max)?,
        convention: convention(model.convention),
        quality: match scan.quality {
            QualityArg::R => Quality::SecretFraction,
            QualityArg::Fidelity => Quality::FidelityLowerBound,
        },
    })
}

fn describe(meta: &mut Metadata, model: &cli::Model, params: &HardwareParams) {
    meta.push(
        "params_file",
        model.params.as_ref().map_or("<defaults>".into(), |p| p.display().to_string()),
    );
    for (k, v) in echo(params) {
        meta.push(k, v);
    }
    meta.push("convention", format!("{:?}", model.convention));
}

fn optimize_line(a: &cli::OptimizeLine) -> CliResult<Status> {
    let params = params(a.model.params.as_deref())?;
    let codes = a.code.iter().map(|c| code(c)).collect::<CliResult<Vec<_>>>()?;
    let lengths = parse_lengths(&a.lengths)?;
    let settings = settings(&a.model, &a.scan)?;
    let rows = parallel::compare_codes(&lengths, &codes, &params, &settings)?;

    let mut meta = Metadata::new("optimize-line");
    describe(&mut meta, &a.model, &params);
    meta.push("codes", a.code.join(","));
    meta.push("L_km", &a.lengths);
    meta.push("w_range", format!("{}..={}", a.scan.w_min, a.scan.w_max));
    meta.push("quality", format!("{:?}", a.scan.quality));
    emit(a.model.out.as_deref(), &sweep_csv(&meta, &rows)?)?;

    let infeasible = rows.iter().filter(|r| r.optimum.is_none()).count();
    if infeasible > 0 {
        log::warn!("{infeasible} of {} cells infeasible", rows.len());
    }
    Ok(if infeasible == rows.len() { Status::Negative } else { Status::Ok })
}

fn analyze_network(a: &cli::AnalyzeNetwork) -> CliResult<Status> {
    let params = params(a.model.params.as_deref())?;
    let code = code(&a.code)?;
    let net = load_network(&a.network)?;
    let settings = settings(&a.model, &a.scan)?;
    let policy = match a.repeaters {
        RepeatersArg::Fixed => RepeaterPolicy::Fixed,
        RepeatersArg::Optimal => RepeaterPolicy::PerEdgeOptimal,
    };
    let report = match evaluate_network(&net, &code, &params, policy, &settings) {
        Err(repnet_core::Error::Infeasible { min, max }) => {
            eprintln!("no feasible repeater count in {min}..={max} for some link");
            return Ok(Status::Negative);
        }
        other => other?,
    };

    let mut meta = Metadata::new("analyze-network");
    describe(&mut meta, &a.model, &params);
    meta.push("network_file", a.network.display());
    meta.push("code", &code);
    meta.push("repeaters", format!("{:?}", a.repeaters));
    for l in report.network.links() {
        let nodes = report.network.nodes();
        meta.push(
            "link",
            format!("{}->{} L_km={} w={} L0_km={}", nodes[l.tail].id, nodes[l.head].id, l.length_km, l.repeaters, l.spacing_km()),
        );
    }
    let s = report.summary;
    meta.push("edges", s.edges);
    meta.push("cycles", s.cycles);
    meta.push("total_repeaters", s.total_repeaters);
    meta.push("max_degree", s.max_degree);
    meta.push("success_probability", report.success);
    emit(a.model.out.as_deref(), &network_csv(&meta, &report)?)?;
    Ok(Status::Ok)
}

fn simulate(a: &cli::Simulate) -> CliResult<Status> {
    let params = params(a.model.params.as_deref())?;
    let code = code(&a.code)?;
    let net = load_network(&a.network)?;
    let sampling = match a.sampling {
        SamplingArg::Sources => Sampling::Sources,
        SamplingArg::Circuit => Sampling::Circuit,
    };
    let settings = LinkSettings {
        convention: convention(a.model.convention),
        ..LinkSettings::default()
    };
    let analytic = evaluate_network(&net, &code, &params, RepeaterPolicy::Fixed, &settings)?;
    // The sampler needs the same (even) repeater counts as the analysis.
    let net = analytic.network.clone();
    let coded = (a.code != "none").then_some(&code);
    let trace = match &a.trace {
        Some(_) => Some(format_trace(
            &run_protocol(&net, a.seed, &[], Ordering::Streaming)?,
            &net.expand(),
        )),
        None => None,
    };
    let estimates = parallel::monte_carlo_node_error(&net, &params, a.trials, a.seed, coded, sampling)?;

    let rows: Vec<Comparison> = analytic
        .nodes
        .iter()
        .zip(estimates)
        .map(|(n, sampled)| Comparison {
            node: net.nodes()[n.node].id.clone(),
            degree: n.degrees.total,
            analytic: n.error_rate,
            sampled,
        })
        .collect();
    let starved = rows.iter().filter(|r| r.sampled.accepted == 0).count();
    if starved > 0 {
        log::warn!("{starved} node(s) had no accepted trial; links are too lossy for sampling");
    }
    let mut meta = Metadata::new("simulate");
    describe(&mut meta, &a.model, &params);
    meta.push("network_file", a.network.display());
    meta.push("code", &code);
    meta.push("trials", a.trials);
    meta.push("seed", a.seed);
    meta.push("sampling", format!("{:?}", a.sampling));
    emit(a.model.out.as_deref(), &simulate_csv(&meta, &rows)?)?;
    if let (Some(path), Some(text)) = (&a.trace, trace) {
        crate::output::write_atomic(path, text.as_bytes())?;
    }
    Ok(Status::Ok)
}

fn graph_of(path: &Path) -> CliResult<(Graph, Vec<String>)> {
    let net = load_network(path)?;
    let ids = net.nodes().iter().map(|n| n.id.clone()).collect();
    Ok((net.graph(), ids))
}

fn lc_check(a: &cli::LcCheck) -> CliResult<Status> {
    let (g1, ids) = graph_of(&a.first)?;
    let (g2, ids2) = graph_of(&a.second)?;
    if ids != ids2 {
        log::info!("node ids differ; graphs are compared by node order");
    }
    match check_lu_equivalence_bounded(&g1, &g2, a.bound)? {
        LcCheck::Equivalent(seq) => {
            let names: Vec<&str> = seq.iter().map(|&v| ids[v].as_str()).collect();
            println!("equivalent: local complementation at [{}]", names.join(", "));
            Ok(Status::Ok)
        }
        LcCheck::NotEquivalent => {
            println!("not equivalent");
            Ok(Status::Negative)
        }
        LcCheck::BoundExceeded { explored } => {
            println!("not found within bound ({explored} graphs explored)");
            Ok(Status::Negative)
        }
    }
}
