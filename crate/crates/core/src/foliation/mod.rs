//! Characteristic foliations on a rational Seifert surface, reduced to their
//! singular points and separatrices.
//!
//! A positive elliptic point is a source, a negative one a sink, and a
//! hyperbolic point has two stable separatrices coming in and two unstable
//! ones going out. The flow leaves the surface through its boundary, which is
//! modeled by the virtual node [`BOUNDARY`]: it only receives edges.

mod format;
mod rewrite;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::invariants::{Sign, SingularityCounts};

pub use format::{parse_graph, write_graph};
pub use rewrite::{add_canceling_pair, cancel_pair, frontier, normalize, Certificate, Normalized};

/// Id of the virtual boundary node.
pub const BOUNDARY: &str = "∂";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Elliptic,
    Hyperbolic,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Node {
    pub id: String,
    pub kind: Kind,
    pub sign: Sign,
}

impl Node {
    pub fn new(id: impl Into<String>, kind: Kind, sign: Sign) -> Self {
        Node { id: id.into(), kind, sign }
    }

    pub fn is_source(&self) -> bool {
        self.kind == Kind::Elliptic && self.sign == Sign::Plus
    }

    pub fn is_sink(&self) -> bool {
        self.kind == Kind::Elliptic && self.sign == Sign::Minus
    }
}

/// A directed separatrix (or flow line) `from -> to`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
}

impl Edge {
    pub fn new(from: impl Into<String>, to: impl Into<String>) -> Self {
        Edge { from: from.into(), to: to.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoliationError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("node {0:?} is declared twice")]
    DuplicateNode(String),
    #[error("{BOUNDARY:?} is reserved for the boundary")]
    ReservedId,
    #[error("edge {from:?} -> {to:?} mentions an undeclared node")]
    UnknownNode { from: String, to: String },
    #[error("hyperbolic node {id:?} has {inbound} inbound and {outbound} outbound separatrices, expected 2 and 2")]
    SaddleDegree { id: String, inbound: usize, outbound: usize },
    #[error("positive elliptic node {0:?} is a source but has an inbound edge")]
    SourceInbound(String),
    #[error("negative elliptic node {0:?} is a sink but has an outbound edge")]
    SinkOutbound(String),
    #[error("the boundary has an outbound edge to {0:?}")]
    BoundaryOutbound(String),
    #[error("no node {0:?}")]
    MissingNode(String),
    #[error("no edge with index {0}")]
    MissingEdge(usize),
    #[error("{0:?} and {1:?} have different signs")]
    SignMismatch(String, String),
    #[error("cancellation needs an elliptic and a hyperbolic node, got {0:?} and {1:?}")]
    KindMismatch(String, String),
    #[error("no edge joins {0:?} and {1:?} in the direction of the flow")]
    NoConnectingEdge(String, String),
    #[error("a negative pair needs a source at the tail of the attaching edge; {0:?} is not one")]
    IncompatibleAttach(String),
    #[error("cancelling {0:?} and {1:?} leaves saddles without a source")]
    NonGeneric(String, String),
}

/// Nodes keyed by id and an ordered edge list; an edge's id is its index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FoliationGraph {
    nodes: BTreeMap<String, Node>,
    edges: Vec<Edge>,
}

impl FoliationGraph {
    /// Builds and validates a graph.
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge>) -> Result<Self, FoliationError> {
        let mut map = BTreeMap::new();
        for node in nodes {
            if node.id == BOUNDARY {
                return Err(FoliationError::ReservedId);
            }
            if map.contains_key(&node.id) {
                return Err(FoliationError::DuplicateNode(node.id));
            }
            map.insert(node.id.clone(), node);
        }
        let g = FoliationGraph { nodes: map, edges };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_parts(nodes: BTreeMap<String, Node>, edges: Vec<Edge>) -> Self {
        let g = FoliationGraph { nodes, edges };
        debug_assert_eq!(g.validate(), Ok(()));
        g
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values()
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Option<&Edge> {
        self.edges.get(index)
    }

    pub fn inbound(&self, id: &str) -> impl Iterator<Item = &Edge> + '_ {
        let id = id.to_owned();
        self.edges.iter().filter(move |e| e.to == id)
    }

    pub fn outbound(&self, id: &str) -> impl Iterator<Item = &Edge> + '_ {
        let id = id.to_owned();
        self.edges.iter().filter(move |e| e.from == id)
    }

    fn is_hyperbolic(&self, id: &str) -> bool {
        self.nodes.get(id).is_some_and(|n| n.kind == Kind::Hyperbolic)
    }

    pub fn validate(&self) -> Result<(), FoliationError> {
        for e in &self.edges {
            let known = |id: &str| id == BOUNDARY || self.nodes.contains_key(id);
            if !known(&e.from) || !known(&e.to) {
                return Err(FoliationError::UnknownNode { from: e.from.clone(), to: e.to.clone() });
            }
            if e.from == BOUNDARY {
                return Err(FoliationError::BoundaryOutbound(e.to.clone()));
            }
        }
        for node in self.nodes.values() {
            let inbound = self.inbound(&node.id).count();
            let outbound = self.outbound(&node.id).count();
            match (node.kind, node.sign) {
                (Kind::Hyperbolic, _) if (inbound, outbound) != (2, 2) => {
                    return Err(FoliationError::SaddleDegree { id: node.id.clone(), inbound, outbound });
                }
                (Kind::Elliptic, Sign::Plus) if inbound > 0 => {
                    return Err(FoliationError::SourceInbound(node.id.clone()));
                }
                (Kind::Elliptic, Sign::Minus) if outbound > 0 => {
                    return Err(FoliationError::SinkOutbound(node.id.clone()));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn counts(&self) -> SingularityCounts {
        let mut c = SingularityCounts::default();
        for node in self.nodes.values() {
            let slot = match (node.kind, node.sign) {
                (Kind::Elliptic, Sign::Plus) => &mut c.e_plus,
                (Kind::Elliptic, Sign::Minus) => &mut c.e_minus,
                (Kind::Hyperbolic, Sign::Plus) => &mut c.h_plus,
                (Kind::Hyperbolic, Sign::Minus) => &mut c.h_minus,
            };
            *slot += 1;
        }
        c
    }

    /// Ids of the negative elliptic points, in id order.
    pub fn sinks(&self) -> Vec<&str> {
        self.nodes.values().filter(|n| n.is_sink()).map(|n| n.id.as_str()).collect()
    }
}

pub fn counts(g: &FoliationGraph) -> SingularityCounts {
    g.counts()
}

impl fmt::Display for FoliationGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph(self))
    }
}

/// A random valid graph. `pick(n)` must return a value in `0..n`; it is the
/// only source of randomness, so any generator (or a fixed script) can drive it.
pub fn random_graph(pick: &mut impl FnMut(usize) -> usize) -> FoliationGraph {
    let sources: Vec<String> = (1..=1 + pick(3)).map(|i| format!("a{i}")).collect();
    let sinks: Vec<String> = (1..=pick(3)).map(|i| format!("z{i}")).collect();
    let saddles: Vec<String> = (1..=pick(7)).map(|i| format!("x{i}")).collect();
    let sign = |b: usize| if b == 0 { Sign::Plus } else { Sign::Minus };

    let mut nodes = Vec::new();
    nodes.extend(sources.iter().map(|id| Node::new(id.clone(), Kind::Elliptic, Sign::Plus)));
    nodes.extend(sinks.iter().map(|id| Node::new(id.clone(), Kind::Elliptic, Sign::Minus)));
    for id in &saddles {
        nodes.push(Node::new(id.clone(), Kind::Hyperbolic, sign(pick(2))));
    }

    let mut exits: Vec<String> = sinks.clone();
    exits.push(BOUNDARY.to_owned());
    let mut spare: Vec<String> = saddles.iter().flat_map(|id| [id.clone(), id.clone()]).collect();
    let mut edges = Vec::new();
    for id in &saddles {
        for _ in 0..2 {
            let tail = if !spare.is_empty() && pick(3) != 0 {
                let i = pick(spare.len());
                spare.swap_remove(i)
            } else {
                sources[pick(sources.len())].clone()
            };
            edges.push(Edge::new(tail, id.clone()));
        }
    }
    for tail in spare {
        edges.push(Edge::new(tail, exits[pick(exits.len())].clone()));
    }
    for id in &sources {
        if pick(2) == 0 {
            edges.push(Edge::new(id.clone(), exits[pick(exits.len())].clone()));
        }
    }
    FoliationGraph::new(nodes, edges).expect("generator respects every degree constraint")
}

#[cfg(test)]
mod tests;
