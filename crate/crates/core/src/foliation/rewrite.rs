//! Elimination and creation of elliptic–hyperbolic pairs, and the reduction
//! that removes negative elliptic points or exhibits an overtwisted disk.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use super::{Edge, FoliationError, FoliationGraph, Kind, Node, BOUNDARY};
use crate::invariants::Sign;

fn lookup<'a>(g: &'a FoliationGraph, id: &str) -> Result<&'a Node, FoliationError> {
    g.node(id).ok_or_else(|| FoliationError::MissingNode(id.to_owned()))
}

/// Drops repeated flow lines between two non-hyperbolic nodes; they carry no
/// information once the saddles between them are gone.
fn dedupe(g: &FoliationGraph, edges: Vec<Edge>) -> Vec<Edge> {
    let mut seen = HashSet::new();
    edges
        .into_iter()
        .filter(|e| g.is_hyperbolic(&e.from) || g.is_hyperbolic(&e.to) || seen.insert(e.clone()))
        .collect()
}

fn without(g: &FoliationGraph, gone: [&str; 2]) -> (BTreeMap<String, Node>, Vec<Edge>) {
    let nodes = g.nodes.iter().filter(|(id, _)| !gone.contains(&id.as_str())).map(|(k, v)| (k.clone(), v.clone())).collect();
    let edges = g
        .edges
        .iter()
        .filter(|e| !gone.contains(&e.from.as_str()) && !gone.contains(&e.to.as_str()))
        .cloned()
        .collect();
    (nodes, edges)
}

/// Cancels elliptic `e` against hyperbolic `h` of the same sign along a
/// separatrix joining them (`e -> h` when positive, `h -> e` when negative).
///
/// The separatrices that ended at (or started from) the pair are spliced onto
/// the opposite separatrix of `h`. In the negative case unstable separatrices
/// that have nowhere left to go leave through the boundary. In the positive
/// case stable separatrices cannot come from the boundary, so a
/// configuration that would leave two saddles without a source is refused.
pub fn cancel_pair(g: &FoliationGraph, e: &str, h: &str) -> Result<FoliationGraph, FoliationError> {
    let (en, hn) = (lookup(g, e)?, lookup(g, h)?);
    if en.kind != Kind::Elliptic || hn.kind != Kind::Hyperbolic {
        return Err(FoliationError::KindMismatch(e.to_owned(), h.to_owned()));
    }
    if en.sign != hn.sign {
        return Err(FoliationError::SignMismatch(e.to_owned(), h.to_owned()));
    }
    match en.sign {
        Sign::Plus => cancel_positive(g, e, h),
        Sign::Minus => cancel_negative(g, e, h),
    }
}

fn cancel_positive(g: &FoliationGraph, e: &str, h: &str) -> Result<FoliationGraph, FoliationError> {
    let used = g
        .edges
        .iter()
        .position(|x| x.from == e && x.to == h)
        .ok_or_else(|| FoliationError::NoConnectingEdge(e.to_owned(), h.to_owned()))?;
    let other = g
        .edges
        .iter()
        .enumerate()
        .find(|(i, x)| *i != used && x.to == h)
        .map(|(_, x)| x.from.clone())
        .expect("saddles have two stable separatrices");
    if other == e || other == h {
        return Err(FoliationError::NonGeneric(e.to_owned(), h.to_owned()));
    }
    let heads: Vec<String> = g
        .edges
        .iter()
        .enumerate()
        .filter(|(i, x)| *i != used && (x.from == e || x.from == h))
        .map(|(_, x)| x.to.clone())
        .collect();

    let (nodes, mut edges) = without(g, [e, h]);
    if g.is_hyperbolic(&other) {
        let saddles: Vec<&String> = heads.iter().filter(|x| g.is_hyperbolic(x)).collect();
        let target = match saddles.as_slice() {
            [] => heads.first().map_or(BOUNDARY, String::as_str),
            [t] => t.as_str(),
            _ => return Err(FoliationError::NonGeneric(e.to_owned(), h.to_owned())),
        };
        edges.push(Edge::new(other, target));
    } else {
        edges.extend(heads.into_iter().map(|x| Edge::new(other.clone(), x)));
    }
    let edges = dedupe(g, edges);
    Ok(FoliationGraph::from_parts(nodes, edges))
}

fn cancel_negative(g: &FoliationGraph, p: &str, h: &str) -> Result<FoliationGraph, FoliationError> {
    let used = g
        .edges
        .iter()
        .position(|x| x.from == h && x.to == p)
        .ok_or_else(|| FoliationError::NoConnectingEdge(h.to_owned(), p.to_owned()))?;
    let onward = g
        .edges
        .iter()
        .enumerate()
        .find(|(i, x)| *i != used && x.from == h)
        .map(|(_, x)| x.to.clone())
        .expect("saddles have two unstable separatrices")
        .to_owned();
    let onward = (onward != p && onward != h).then_some(onward);
    let tails: Vec<String> = g
        .edges
        .iter()
        .filter(|x| (x.to == p || x.to == h) && x.from != p && x.from != h)
        .map(|x| x.from.clone())
        .collect();

    let (nodes, mut edges) = without(g, [p, h]);
    let mut stranded: Vec<&String> = tails.iter().filter(|x| g.is_hyperbolic(x)).collect();
    match onward {
        Some(c) if !g.is_hyperbolic(&c) => {
            edges.extend(tails.iter().map(|t| Edge::new(t.clone(), c.clone())));
            stranded.clear();
        }
        Some(c) => {
            let feeder = if stranded.is_empty() { tails.first().expect("saddles have stable separatrices").clone() } else { stranded.remove(0).clone() };
            edges.push(Edge::new(feeder, c));
        }
        None => {}
    }
    edges.extend(stranded.into_iter().map(|t| Edge::new(t.clone(), BOUNDARY)));
    let edges = dedupe(g, edges);
    Ok(FoliationGraph::from_parts(nodes, edges))
}

fn fresh_index(g: &FoliationGraph) -> usize {
    (1..).find(|n| g.node(&format!("e{n}")).is_none() && g.node(&format!("h{n}")).is_none()).expect("unbounded range")
}

/// Inserts an elliptic and a hyperbolic point of the given sign on edge
/// `attach`, joined by a separatrix so that they cancel again.
///
/// A positive pair splits `u -> v` into `u -> h`, `e -> h`, `h -> v` and
/// sends the second unstable separatrix of `h` out of the boundary. A
/// negative pair feeds both stable separatrices of `h` from `u`, which must
/// therefore be a source.
pub fn add_canceling_pair(g: &FoliationGraph, sign: Sign, attach: usize) -> Result<FoliationGraph, FoliationError> {
    let Edge { from: u, to: v } = g.edge(attach).ok_or(FoliationError::MissingEdge(attach))?.clone();
    let n = fresh_index(g);
    let (e, h) = (format!("e{n}"), format!("h{n}"));
    let mut nodes = g.nodes.clone();
    let mut edges = g.edges.clone();
    match sign {
        Sign::Plus => {
            edges[attach] = Edge::new(u, h.clone());
            edges.push(Edge::new(e.clone(), h.clone()));
            edges.push(Edge::new(h.clone(), v));
            edges.push(Edge::new(h.clone(), BOUNDARY));
        }
        Sign::Minus => {
            if !g.node(&u).is_some_and(Node::is_source) {
                return Err(FoliationError::IncompatibleAttach(u));
            }
            edges[attach] = Edge::new(u.clone(), h.clone());
            edges.push(Edge::new(u, h.clone()));
            edges.push(Edge::new(h.clone(), v));
            edges.push(Edge::new(h.clone(), e.clone()));
        }
    }
    nodes.insert(e.clone(), Node::new(e, Kind::Elliptic, sign));
    nodes.insert(h.clone(), Node::new(h, Kind::Hyperbolic, sign));
    Ok(FoliationGraph::from_parts(nodes, edges))
}

/// A negative elliptic point whose basin is bounded only by positive
/// singularities: the boundary of an overtwisted disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub sink: String,
    pub frontier: Vec<String>,
    #[serde(skip)]
    pub graph: FoliationGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    /// No negative elliptic points remain.
    Normalized(FoliationGraph),
    Overtwisted(Certificate),
}

impl Normalized {
    pub fn graph(&self) -> &FoliationGraph {
        match self {
            Normalized::Normalized(g) => g,
            Normalized::Overtwisted(c) => &c.graph,
        }
    }
}

/// Nodes with a separatrix straight into `sink`, in id order.
pub fn frontier(g: &FoliationGraph, sink: &str) -> Vec<String> {
    g.inbound(sink).map(|e| e.from.clone()).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Cancels negative elliptic points against negative saddles on their basin
/// frontier until none are left, or until some sink has only positive
/// singularities on its frontier.
pub fn normalize(g: &FoliationGraph) -> Normalized {
    let mut g = g.clone();
    'search: loop {
        let sinks: Vec<String> = g.sinks().into_iter().map(str::to_owned).collect();
        let Some(first) = sinks.first() else {
            return Normalized::Normalized(g);
        };
        for p in &sinks {
            let negative_saddle = frontier(&g, p)
                .into_iter()
                .find(|id| g.node(id).is_some_and(|n| n.kind == Kind::Hyperbolic && n.sign == Sign::Minus));
            if let Some(h) = negative_saddle {
                g = cancel_pair(&g, p, &h).expect("negative cancellation along a frontier saddle is total");
                continue 'search;
            }
        }
        let frontier = frontier(&g, first);
        return Normalized::Overtwisted(Certificate { sink: first.clone(), frontier, graph: g });
    }
}
