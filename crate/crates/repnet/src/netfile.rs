//! Network description files.
//!
//! ```text
//! # comment
//! node <id> [label]
//! edge <tail> <head> length_km=<x> [w=<int>]
//! ```

use std::path::Path;

use repnet_core::network::NetworkGraph;

use crate::error::{CliError, CliResult};

pub fn parse_network(text: &str, path: &Path) -> CliResult<NetworkGraph> {
    let mut net = NetworkGraph::new();
    for (i, raw) in text.lines().enumerate() {
        let fail = |message: String| CliError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut words = line.split_whitespace();
        match words.next() {
            None => {}
            Some("node") => {
                let id = words.next().ok_or_else(|| fail("node without id".into()))?;
                let label: Vec<&str> = words.collect();
                let label = (!label.is_empty()).then(|| label.join(" "));
                net.add_node(id, label.as_deref()).map_err(|e| fail(e.to_string()))?;
            }
            Some("edge") => {
                let (Some(tail), Some(head)) = (words.next(), words.next()) else {
                    return Err(fail("edge needs two node ids".into()));
                };
                let mut length = None;
                let mut w = 0u32;
                for attr in words {
                    match attr.split_once('=') {
                        Some(("length_km", v)) => {
                            length = Some(v.parse::<f64>().map_err(|e| fail(format!("bad length_km: {e}")))?)
                        }
                        Some(("w", v)) => w = v.parse().map_err(|e| fail(format!("bad w: {e}")))?,
                        _ => return Err(fail(format!("unknown edge attribute `{attr}`"))),
                    }
                }
                let length = length.ok_or_else(|| fail("edge without length_km".into()))?;
                net.add_link(tail, head, length, w).map_err(|e| fail(e.to_string()))?;
            }
            Some(other) => return Err(fail(format!("unknown record `{other}`"))),
        }
    }
    if net.nodes().is_empty() {
        return Err(CliError::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: "no nodes".into(),
        });
    }
    Ok(net)
}

pub fn load_network(path: &Path) -> CliResult<NetworkGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_network(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> CliResult<NetworkGraph> {
        parse_network(text, Path::new("n.net"))
    }

    #[test]
    fn reads_nodes_and_edges() {
        let n = parse("# triangle\nnode a Alice site\nnode b\nnode c\nedge a b length_km=100 w=4\nedge b c length_km=50\nedge c a length_km=75.5 w=2\n")
            .unwrap();
        assert_eq!(n.nodes().len(), 3);
        assert_eq!(n.nodes()[0].label.as_deref(), Some("Alice site"));
        assert_eq!(n.links()[0].repeaters, 4);
        assert_eq!(n.links()[1].repeaters, 0);
        assert_eq!(n.links()[2].length_km, 75.5);
    }

    #[test]
    fn rejects_with_line_numbers() {
        for (text, line) in [
            ("node a\nnode a", 2),
            ("node a\nedge a a length_km=1", 2),
            ("node a\nnode b\nedge a b length_km=1\nedge b a length_km=2", 4),
            ("node a\nnode b\nedge a b", 3),
            ("node a\nnode b\nedge a b length_km=1 colour=red", 3),
            ("node a\nlink a b", 2),
            ("node a\nedge a z length_km=1", 2),
        ] {
            match parse(text) {
                Err(CliError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(parse("# empty").is_err());
    }
}
