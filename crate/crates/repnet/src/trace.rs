//! Text dump of a single protocol run.

use std::fmt::Write;

use repnet_core::network::RepeaterGraph;
use repnet_core::oracle::protocol::{Byproduct, Outcome, ProtocolTrace};

/// One `station <id> outcome {+1|-1|?}` line per repeater, then one
/// `byproduct <node> {I|Z|?}` line per network node.
pub fn format_trace(trace: &ProtocolTrace, rg: &RepeaterGraph) -> String {
    let mut out = String::new();
    for &(q, outcome) in &trace.outcomes {
        let o = match outcome {
            Outcome::Plus => "+1",
            Outcome::Minus => "-1",
            Outcome::Erased => "?",
        };
        writeln!(out, "station {} outcome {o}", rg.name(q)).unwrap();
    }
    for (v, b) in trace.byproducts.iter().enumerate() {
        let b = match b {
            Byproduct::Identity => "I",
            Byproduct::Z => "Z",
            Byproduct::Undetermined => "?",
        };
        writeln!(out, "byproduct {} {b}", rg.name(v)).unwrap();
    }
    out
}
