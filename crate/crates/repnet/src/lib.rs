//! Command-line planner for graph-state quantum repeater networks: file
//! formats, CSV output, parallel sweeps and the subcommands.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod netfile;
pub mod output;
pub mod parallel;
pub mod report;
pub mod trace;
