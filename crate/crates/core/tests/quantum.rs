mod common;

use common::graph;
use graphalg::graphs::{canonical_form, glue_product};
use graphalg::params::Parameter;
use graphalg::quantum::QuantumGraph;
use graphalg::scalar::{int, rat, Rational};
use graphalg::{Error, LabeledGraph, QuantumGraphQ};
use proptest::prelude::*;
use serde_json::json;

fn quantum(k: usize) -> impl Strategy<Value = QuantumGraphQ> {
    proptest::collection::vec(((-3i64..=3, 1i64..=3), graph(k, 4, 4, false)), 0..4).prop_map(move |terms| {
        let terms: Vec<(Rational, LabeledGraph)> = terms.into_iter().map(|((p, q), g)| (rat(p, q), g)).collect();
        QuantumGraph::from_terms(k, terms.iter().map(|(c, g)| (c.clone(), g))).unwrap()
    })
}

proptest! {
    #[test]
    fn product_is_bilinear_and_commutative(x in quantum(2), y in quantum(2), z in quantum(2)) {
        let xy = x.product(&y).unwrap();
        prop_assert_eq!(&xy, &y.product(&x).unwrap());
        prop_assert_eq!(
            x.add(&y).unwrap().product(&z).unwrap(),
            x.product(&z).unwrap().add(&y.product(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(xy.product(&z).unwrap(), x.product(&y.product(&z).unwrap()).unwrap());
    }

    #[test]
    fn concatenation_is_associative_and_star_reverses(x in quantum(2), y in quantum(2), z in quantum(2)) {
        prop_assert_eq!(
            x.concat(&y).unwrap().concat(&z).unwrap(),
            x.concat(&y.concat(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.concat(&y).unwrap().star().unwrap(), y.star().unwrap().concat(&x.star().unwrap()).unwrap());
    }

    #[test]
    fn subtraction_cancels(x in quantum(3)) {
        prop_assert!(x.sub(&x).unwrap().is_zero());
        prop_assert_eq!(x.scale(&int(2)), x.add(&x).unwrap());
        prop_assert!(x.scale(&int(0)).is_zero());
    }

    #[test]
    fn evaluation_is_linear(x in quantum(2), y in quantum(2), c in -3i64..=3) {
        let f = Parameter::<Rational>::Perf;
        let lhs = f.evaluate_quantum(&x.scale(&int(c)).add(&y).unwrap()).unwrap();
        let rhs = int(c) * f.evaluate_quantum(&x).unwrap() + f.evaluate_quantum(&y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trips(x in quantum(2)) {
        prop_assert_eq!(QuantumGraph::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn product_of_single_graphs_is_the_glued_graph(a in graph(2, 4, 4, false), b in graph(2, 4, 4, false)) {
        let q = QuantumGraphQ::from_graph(&a).product(&QuantumGraphQ::from_graph(&b)).unwrap();
        let glued = glue_product(&a, &b).unwrap();
        prop_assert_eq!(q.len(), 1);
        prop_assert_eq!(q.coefficient(&glued), int(1));
    }
}

#[test]
fn isomorphic_terms_merge() {
    let p3 = LabeledGraph::path(3).unwrap();
    let relabeled = LabeledGraph::with_edges(3, vec![2, 0], &[(2, 1), (1, 0)]).unwrap();
    assert_eq!(canonical_form(&p3), canonical_form(&relabeled));
    let q = QuantumGraphQ::from_terms(2, [(int(2), &p3), (rat(-1, 2), &relabeled)]).unwrap();
    assert_eq!(q.len(), 1);
    assert_eq!(q.coefficient(&p3), rat(3, 2));
    let zero = QuantumGraphQ::from_terms(2, [(int(1), &p3), (int(-1), &relabeled)]).unwrap();
    assert!(zero.is_zero());
}

#[test]
fn arity_is_checked() {
    let x = QuantumGraphQ::from_graph(&LabeledGraph::empty_labeled(2));
    let y = QuantumGraphQ::from_graph(&LabeledGraph::empty_labeled(3));
    assert!(matches!(x.add(&y), Err(Error::ArityMismatch { .. })));
    assert!(matches!(y.concat(&y), Err(Error::WrongArity { .. })));
    assert!(x.add(&QuantumGraphQ::zero(5)).is_ok());
}

#[test]
fn contraction_names_the_offending_term() {
    let k2 = QuantumGraphQ::from_graph(&LabeledGraph::complete_labeled(2));
    match k2.contract() {
        Err(Error::AdjacentLabels(term)) => assert!(term.contains("0-1"), "{term}"),
        other => panic!("expected an adjacency error, got {other:?}"),
    }
}

#[test]
fn unlabel_and_json_forms() {
    let p3 = LabeledGraph::path(3).unwrap();
    let q = QuantumGraphQ::term(rat(1, 2), &p3);
    assert_eq!(q.unlabel().k(), 0);
    let parsed = QuantumGraphQ::from_json(&json!({
        "k": 2,
        "terms": [{"coef": "1/2", "graph": {"nodes": 3, "labels": [0, 2], "edges": [[0, 1, 1], [1, 2, 1]]}}]
    }))
    .unwrap();
    assert_eq!(parsed, q);
    let text = QuantumGraphQ::from_json(&json!({
        "k": 2,
        "terms": [{"coef": "1/2", "graph": "graph k=2\nnodes 3\nlabel 1 0\nlabel 2 2\nedge 0 1\nedge 1 2\n"}]
    }))
    .unwrap();
    assert_eq!(text, q);
}
