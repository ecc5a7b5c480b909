//! Line format: `N <id> <e|h> <+|->` declares a node, `E <from> <to>` an
//! edge. Blank lines and lines starting with `#` are ignored.

use super::{Edge, FoliationError, FoliationGraph, Kind, Node};
use crate::invariants::Sign;

pub fn parse_graph(text: &str) -> Result<FoliationGraph, FoliationError> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: String| FoliationError::Parse { line: i + 1, reason };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["N", id, kind, sign] => {
                let kind = match *kind {
                    "e" => Kind::Elliptic,
                    "h" => Kind::Hyperbolic,
                    other => return Err(err(format!("node kind must be e or h, got {other:?}"))),
                };
                let sign: Sign = sign.parse().map_err(err)?;
                nodes.push(Node::new(*id, kind, sign));
            }
            ["E", from, to] => edges.push(Edge::new(*from, *to)),
            ["N", ..] => return Err(err("expected `N <id> <e|h> <+|->`".into())),
            ["E", ..] => return Err(err("expected `E <from> <to>`".into())),
            _ => return Err(err(format!("unrecognized line {line:?}"))),
        }
    }
    FoliationGraph::new(nodes, edges)
}

pub fn write_graph(g: &FoliationGraph) -> String {
    let mut out = String::new();
    for n in g.nodes() {
        let kind = match n.kind {
            Kind::Elliptic => 'e',
            Kind::Hyperbolic => 'h',
        };
        out.push_str(&format!("N {} {} {}\n", n.id, kind, n.sign));
    }
    for e in g.edges() {
        out.push_str(&format!("E {} {}\n", e.from, e.to));
    }
    out
}
