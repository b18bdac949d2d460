//! Rayon front ends for the embarrassingly parallel parts of the pipeline.

use rayon::prelude::*;

use repnet_core::codes::CodeSpec;
use repnet_core::error_model::HardwareParams;
use repnet_core::network::NetworkGraph;
use repnet_core::optimizer::{sweep_cell, LinkSettings, SweepRow};
use repnet_core::oracle::monte_carlo::{McScenario, NodeEstimate, Sampling, Tally, MIN_TRIALS};
use repnet_core::{Error, Result};

/// Same rows, in the same order, as the sequential comparison.
pub fn compare_codes(
    lengths: &[f64],
    codes: &[CodeSpec],
    params: &HardwareParams,
    settings: &LinkSettings,
) -> Result<Vec<SweepRow>> {
    let cells: Vec<(f64, &CodeSpec)> = lengths
        .iter()
        .flat_map(|&l| codes.iter().map(move |c| (l, c)))
        .collect();
    cells
        .par_iter()
        .map(|&(l, c)| sweep_cell(l, c, params, settings))
        .collect()
}

/// Block-parallel Monte-Carlo; identical to the sequential estimate.
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
    let tally = McScenario::blocks(trials)
        .par_iter()
        .map(|&(block, count)| scenario.run_block(seed, block, count))
        .reduce(
            || Tally::new(scenario.node_count()),
            |mut a, b| {
                a.merge(&b);
                a
            },
        );
    Ok(tally.estimates())
}
