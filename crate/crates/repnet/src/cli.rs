//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "repnet", version, about = "Plan and analyze graph-state quantum repeater networks")]
pub struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize the repeater count of a single link for each length and code.
    OptimizeLine(OptimizeLine),
    /// Evaluate node error rates and fidelity bounds of a network.
    AnalyzeNetwork(AnalyzeNetwork),
    /// Compare Monte-Carlo node error rates with the analytic ones.
    Simulate(Simulate),
    /// Search for a local-complementation sequence between two graphs.
    LcCheck(LcCheck),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// Half of each link's stations enter a node's error rate.
    A,
    /// Every station of each link enters a node's error rate.
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QualityArg {
    /// Effective secret fraction.
    R,
    /// Success probability times the fidelity lower bound.
    Fidelity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepeatersArg {
    /// Counts from the network file (odd counts rounded up).
    Fixed,
    /// Each link optimized on its own.
    Optimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplingArg {
    Sources,
    Circuit,
}

#[derive(Debug, Args)]
pub struct Model {
    /// Hardware parameter file (key=value lines).
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "a", ignore_case = true)]
    pub convention: Convention,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Scan {
    #[arg(long, value_enum, default_value = "r")]
    pub quality: QualityArg,
    #[arg(long, default_value_t = 2)]
    pub w_min: u32,
    #[arg(long, default_value_t = 2000)]
    pub w_max: u32,
}

#[derive(Debug, Args)]
pub struct OptimizeLine {
    #[command(flatten)]
    pub model: Model,
    #[command(flatten)]
    pub scan: Scan,
    /// Comma-separated codes: none, steane:<n_max>, golay.
    #[arg(long, default_value = "none", value_delimiter = ',')]
    pub code: Vec<String>,
    /// Link lengths in km: `100,200,400` or `start:stop:step`.
    #[arg(long = "L", value_name = "KM")]
    pub lengths: String,
}

#[derive(Debug, Args)]
pub struct AnalyzeNetwork {
    #[command(flatten)]
    pub model: Model,
    #[command(flatten)]
    pub scan: Scan,
    #[arg(long)]
    pub network: PathBuf,
    #[arg(long, default_value = "none")]
    pub code: String,
    #[arg(long, value_enum, default_value = "fixed")]
    pub repeaters: RepeatersArg,
}

#[derive(Debug, Args)]
pub struct Simulate {
    #[command(flatten)]
    pub model: Model,
    #[arg(long)]
    pub network: PathBuf,
    #[arg(long, default_value = "none")]
    pub code: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "sources")]
    pub sampling: SamplingArg,
    /// Also write the outcome and byproduct trace of one noiseless run.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LcCheck {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Maximum number of graphs to visit.
    #[arg(long, default_value_t = repnet_core::oracle::lc_search::DEFAULT_STATE_BOUND)]
    pub bound: usize,
}
