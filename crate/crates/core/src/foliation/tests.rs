use proptest::prelude::*;

use super::*;
use crate::arith::Rational;
use crate::invariants::{poincare_hopf_check, sl_from_counts};

fn graph(text: &str) -> FoliationGraph {
    parse_graph(text).unwrap()
}

fn sl(g: &FoliationGraph, r: i64) -> Rational<i64> {
    sl_from_counts(&r, &g.counts()).unwrap()
}

fn index_sum(g: &FoliationGraph) -> i64 {
    g.counts().index_sum().unwrap()
}

const DISK: &str = "N a e +\nE a ∂\n";

// two sources feeding a positive saddle whose unstable separatrices leave
const CHAIN: &str = "N a e +\nN b e +\nN x h +\nE a x\nE b x\nE x ∂\nE x ∂\n";

const NEGATIVE_PAIR: &str = "N a e +\nN b e +\nN x h -\nN p e -\nE a x\nE b x\nE x p\nE x ∂\n";

// a sink whose basin is bounded by two positive saddles
const OVERTWISTED: &str = "\
N a e +
N b e +
N x h +
N y h +
N p e -
E a x
E b x
E x p
E x y
E b y
E y p
E y ∂
";

#[test]
fn count_examples() {
    assert_eq!(graph(DISK).counts(), SingularityCounts::new(1, 0, 0, 0));
    assert_eq!(graph(CHAIN).counts(), SingularityCounts::new(2, 0, 1, 0));
    let empty = FoliationGraph::default();
    assert_eq!(counts(&empty), SingularityCounts::default());
    assert!(!poincare_hopf_check(&1i64, &empty.counts()));
    assert!(poincare_hopf_check(&0i64, &empty.counts()));
}

#[test]
fn format_round_trips() {
    for text in [DISK, CHAIN, NEGATIVE_PAIR, OVERTWISTED] {
        let g = graph(text);
        assert_eq!(graph(&write_graph(&g)), g);
    }
    assert_eq!(write_graph(&graph("# comment\n\nN b e +\nN a e +\nE b ∂\n")), "N a e +\nN b e +\nE b ∂\n");
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_graph("N a q +"), Err(FoliationError::Parse { line: 1, .. })));
    assert!(matches!(parse_graph("N a e +\nN a e -"), Err(FoliationError::DuplicateNode(_))));
    assert!(matches!(parse_graph("N ∂ e +"), Err(FoliationError::ReservedId)));
    assert!(matches!(parse_graph("E a b"), Err(FoliationError::UnknownNode { .. })));
    assert!(matches!(parse_graph("N a e +\nE a"), Err(FoliationError::Parse { line: 2, .. })));
    assert!(matches!(parse_graph("X"), Err(FoliationError::Parse { .. })));
}

#[test]
fn validation_errors() {
    assert!(matches!(parse_graph("N x h +\nE x ∂"), Err(FoliationError::SaddleDegree { .. })));
    assert!(matches!(parse_graph("N a e +\nN b e +\nE a b"), Err(FoliationError::SourceInbound(_))));
    assert!(matches!(parse_graph("N p e -\nE p ∂"), Err(FoliationError::SinkOutbound(_))));
    assert!(matches!(parse_graph("N a e +\nE ∂ a"), Err(FoliationError::BoundaryOutbound(_))));
}

#[test]
fn cancel_example() {
    let g = graph(CHAIN);
    let out = cancel_pair(&g, "a", "x").unwrap();
    assert_eq!(out, graph("N b e +\nE b ∂\n"));
    assert_eq!(sl(&g, 1), sl(&out, 1));
    assert_eq!(sl(&out, 1), Rational::from_integer(-1));
}

#[test]
fn cancel_errors() {
    let g = graph(OVERTWISTED);
    assert_eq!(cancel_pair(&g, "p", "x"), Err(FoliationError::SignMismatch("p".into(), "x".into())));
    assert!(matches!(cancel_pair(&g, "a", "b"), Err(FoliationError::KindMismatch(..))));
    assert!(matches!(cancel_pair(&g, "x", "a"), Err(FoliationError::KindMismatch(..))));
    assert!(matches!(cancel_pair(&g, "a", "y"), Err(FoliationError::NoConnectingEdge(..))));
    assert!(matches!(cancel_pair(&g, "a", "nope"), Err(FoliationError::MissingNode(_))));
}

#[test]
fn positive_cancel_into_a_saddle() {
    // x loses the separatrix from b and the one into y; they close up into
    // a loop at x.
    let g = graph(OVERTWISTED);
    let out = cancel_pair(&g, "b", "y").unwrap();
    assert_eq!(out.counts(), SingularityCounts::new(1, 1, 1, 0));
    assert!(out.edges().contains(&Edge::new("x", "x")));
    assert_eq!(index_sum(&out), index_sum(&g));
    out.validate().unwrap();
}

#[test]
fn negative_cancel_example() {
    let g = graph(NEGATIVE_PAIR);
    let out = cancel_pair(&g, "p", "x").unwrap();
    assert_eq!(out, graph("N a e +\nN b e +\nE a ∂\nE b ∂\n"));
}

#[test]
fn add_pair_examples() {
    let g = graph(DISK);
    let out = add_canceling_pair(&g, Sign::Plus, 0).unwrap();
    assert_eq!(out.counts(), SingularityCounts::new(2, 0, 1, 0));
    assert_eq!(sl(&out, 1), Rational::from_integer(-1));
    assert!(poincare_hopf_check(&1i64, &out.counts()));

    let neg = add_canceling_pair(&g, Sign::Minus, 0).unwrap();
    assert_eq!(neg.counts(), SingularityCounts::new(1, 1, 0, 1));
    assert_eq!(sl(&neg, 3), sl(&g, 3));

    assert_eq!(add_canceling_pair(&g, Sign::Plus, 1), Err(FoliationError::MissingEdge(1)));
    let chain = graph(CHAIN);
    // edge 2 is x -> ∂ and x is not a source
    assert!(matches!(add_canceling_pair(&chain, Sign::Minus, 2), Err(FoliationError::IncompatibleAttach(_))));
}

#[test]
fn added_pairs_cancel_back() {
    let g = graph(CHAIN);
    let plus = add_canceling_pair(&g, Sign::Plus, 0).unwrap();
    assert_eq!(cancel_pair(&plus, "e1", "h1").unwrap().counts(), g.counts());
    let minus = add_canceling_pair(&g, Sign::Minus, 0).unwrap();
    assert_eq!(cancel_pair(&minus, "e1", "h1").unwrap().counts(), g.counts());
}

#[test]
fn normalize_examples() {
    let g = graph(CHAIN);
    assert_eq!(normalize(&g), Normalized::Normalized(g.clone()));

    let out = normalize(&graph(NEGATIVE_PAIR));
    let Normalized::Normalized(n) = out else { panic!("expected a normalized graph") };
    assert_eq!(n.counts(), SingularityCounts::new(2, 0, 0, 0));

    match normalize(&graph(OVERTWISTED)) {
        Normalized::Overtwisted(c) => {
            assert_eq!(c.sink, "p");
            assert_eq!(c.frontier, vec!["x".to_string(), "y".to_string()]);
        }
        other => panic!("expected a certificate, got {other:?}"),
    }
}

fn scripted(choices: Vec<usize>) -> FoliationGraph {
    let mut it = choices.into_iter();
    random_graph(&mut |n| it.next().unwrap_or(0) % n)
}

fn same_sign_links(g: &FoliationGraph) -> Vec<(String, String)> {
    g.edges()
        .iter()
        .filter_map(|e| {
            let (a, b) = (g.node(&e.from)?, g.node(&e.to)?);
            match (a.kind, b.kind, a.sign, b.sign) {
                (Kind::Elliptic, Kind::Hyperbolic, Sign::Plus, Sign::Plus) => Some((a.id.clone(), b.id.clone())),
                (Kind::Hyperbolic, Kind::Elliptic, Sign::Minus, Sign::Minus) => Some((b.id.clone(), a.id.clone())),
                _ => None,
            }
        })
        .collect()
}

proptest! {
    #[test]
    fn rewrites_preserve_invariants(choices in prop::collection::vec(0usize..1000, 64), pick in 0usize..1000, plus in any::<bool>()) {
        let g = scripted(choices);
        let before = (sl(&g, 1), sl(&g, 2), sl(&g, 5), index_sum(&g));
        let links = same_sign_links(&g);
        if !links.is_empty() {
            let (e, h) = &links[pick % links.len()];
            if let Ok(out) = cancel_pair(&g, e, h) {
                out.validate().unwrap();
                prop_assert_eq!((sl(&out, 1), sl(&out, 2), sl(&out, 5), index_sum(&out)), before.clone());
            }
        }
        if !g.edges().is_empty() {
            let sign = if plus { Sign::Plus } else { Sign::Minus };
            if let Ok(out) = add_canceling_pair(&g, sign, pick % g.edges().len()) {
                out.validate().unwrap();
                prop_assert_eq!((sl(&out, 1), sl(&out, 2), sl(&out, 5), index_sum(&out)), before);
            }
        }
    }

    #[test]
    fn negative_cancellation_is_total(choices in prop::collection::vec(0usize..1000, 64)) {
        let g = scripted(choices);
        for (e, h) in same_sign_links(&g) {
            if g.node(&e).unwrap().sign == Sign::Minus {
                prop_assert!(cancel_pair(&g, &e, &h).is_ok());
            }
        }
    }

    #[test]
    fn normalize_removes_sinks_or_certifies(choices in prop::collection::vec(0usize..1000, 64)) {
        let g = scripted(choices);
        let e_minus = g.counts().e_minus;
        match normalize(&g) {
            Normalized::Normalized(n) => {
                prop_assert_eq!(n.counts().e_minus, 0);
                prop_assert_eq!(index_sum(&n), index_sum(&g));
            }
            Normalized::Overtwisted(c) => {
                prop_assert!(c.graph.counts().e_minus <= e_minus);
                for id in &c.frontier {
                    prop_assert_eq!(c.graph.node(id).unwrap().sign, Sign::Plus);
                }
            }
        }
    }
}
