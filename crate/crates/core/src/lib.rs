//! Analytic and simulated performance models for graph-state quantum repeater
//! networks.
//!
//! A network is a graph whose vertices are network nodes and whose edges are
//! long-distance links, each subdivided by an even number of repeater
//! stations. Building the graph state of the expanded repeater graph and
//! measuring every repeater station in the X basis leaves the network nodes in
//! the graph state of the network graph, up to Z byproducts fixed by the
//! parities of the measurement outcomes.
//!
//! The crate is split into:
//!
//! * [`graph`] and [`network`]: the graph data model, expansion into the
//!   repeater graph, main-stabilizer supports and local complementation.
//! * [`error_model`]: physical failure probabilities per repeater station and
//!   per network node.
//! * [`codes`]: logical flip rates and success probabilities of CSS codes.
//! * [`metrics`]: stabilizer error rates, fidelity bounds, secret fractions
//!   and the cost-performance ratio.
//! * [`optimizer`]: repeater-count optimization and network evaluation.
//! * [`oracle`]: an independent stabilizer-tableau and Pauli-frame simulator
//!   used to validate the analytic formulas.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod codes;
pub mod error;
pub mod error_model;
pub mod graph;
pub mod metrics;
pub mod network;
pub mod optimizer;
pub mod oracle;

mod math;

pub use error::{Error, Result};
