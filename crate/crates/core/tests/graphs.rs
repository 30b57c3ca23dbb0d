mod common;

use common::{graph, graph_and_perm, permute};
use graphalg::graphs::{
    canonical_form, concatenate, contract_labels, enumerate_corpus, format_graph, glue_product, isomorphic,
    parse_graph, star, Corpus, CorpusSpec,
};
use graphalg::{Error, LabeledGraph};
use proptest::prelude::*;

fn p(n: usize) -> LabeledGraph {
    LabeledGraph::path(n).unwrap()
}

proptest! {
    #[test]
    fn canonical_form_ignores_node_order((g, perm) in graph_and_perm(2, 6, 9)) {
        prop_assert_eq!(canonical_form(&g), canonical_form(&permute(&g, &perm)));
    }

    #[test]
    fn canonical_representative_is_isomorphic(g in graph(1, 6, 8, true)) {
        let cf = canonical_form(&g);
        let rep = cf.to_graph();
        prop_assert_eq!(canonical_form(&rep), cf.clone());
        prop_assert_eq!(rep.labels(), &[0]);
        prop_assert_eq!(rep.edge_count(), g.edge_count());
    }

    #[test]
    fn star_keeps_the_underlying_graph(g in graph(2, 5, 7, false)) {
        prop_assert!(isomorphic(&g.forget_labels(), &star(&g).unwrap().forget_labels()));
    }

    #[test]
    fn gluing_is_commutative_and_associative(
        a in graph(2, 4, 5, false), b in graph(2, 4, 5, false), c in graph(2, 4, 5, false)
    ) {
        let ab = glue_product(&a, &b).unwrap();
        prop_assert!(isomorphic(&ab, &glue_product(&b, &a).unwrap()));
        prop_assert!(isomorphic(
            &glue_product(&ab, &c).unwrap(),
            &glue_product(&a, &glue_product(&b, &c).unwrap()).unwrap()
        ));
        prop_assert!(isomorphic(&glue_product(&a, &LabeledGraph::empty_labeled(2)).unwrap(), &a));
        prop_assert_eq!(ab.node_count(), a.node_count() + b.node_count() - 2);
        prop_assert_eq!(ab.edge_count(), a.edge_count() + b.edge_count());
    }

    #[test]
    fn concatenation_is_associative_and_reversed_by_star(
        a in graph(2, 4, 5, false), b in graph(2, 4, 5, false), c in graph(2, 4, 5, false)
    ) {
        let ab = concatenate(&a, &b).unwrap();
        prop_assert!(isomorphic(
            &concatenate(&ab, &c).unwrap(),
            &concatenate(&a, &concatenate(&b, &c).unwrap()).unwrap()
        ));
        prop_assert!(isomorphic(
            &star(&ab).unwrap(),
            &concatenate(&star(&b).unwrap(), &star(&a).unwrap()).unwrap()
        ));
        prop_assert_eq!(star(&star(&a).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(ab.node_count(), a.node_count() + b.node_count() - 1);
    }

    #[test]
    fn text_format_round_trips(g in graph(3, 6, 10, true)) {
        prop_assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn contraction_merges_labels(g in common::independent_graph(2, 5, 7)) {
        let c = contract_labels(&g).unwrap();
        prop_assert_eq!(c.k(), 1);
        prop_assert_eq!(c.node_count(), g.node_count() - 1);
        prop_assert_eq!(c.edge_count(), g.edge_count());
        let l = c.labeled_node(1);
        prop_assert_eq!(c.degree(l), g.degree(g.labeled_node(1)) + g.degree(g.labeled_node(2)));
    }
}

#[test]
fn paths_concatenate() {
    let p3 = concatenate(&LabeledGraph::complete_labeled(2), &LabeledGraph::complete_labeled(2)).unwrap();
    assert!(isomorphic(&p3, &p(3)));
    assert!(isomorphic(&concatenate(&p(3), &p(4)).unwrap(), &p(6)));
    assert!(isomorphic(&star(&p(5)).unwrap(), &p(5)));
}

#[test]
fn label_order_is_part_of_the_class() {
    let pendant = LabeledGraph::with_edges(3, vec![0, 1], &[(0, 2)]).unwrap();
    assert!(!isomorphic(&pendant, &star(&pendant).unwrap()));
    assert!(isomorphic(&p(4), &star(&p(4)).unwrap()));
}

#[test]
fn contraction_rejects_adjacent_labels() {
    assert!(matches!(
        contract_labels(&LabeledGraph::complete_labeled(2)),
        Err(Error::AdjacentLabels(_))
    ));
}

#[test]
fn corpus_counts() {
    // unlabeled simple graphs on 0..=4 nodes: 1 + 1 + 2 + 4 + 11
    assert_eq!(enumerate_corpus(&CorpusSpec::new(0, 4).simple()).unwrap().len(), 19);
    // 1-labeled simple graphs on 1..=3 nodes: 1 + 2 + 6
    assert_eq!(
        enumerate_corpus(&CorpusSpec::new(1, 3).multiplicity(1)).unwrap().len(),
        9
    );
}

#[test]
fn corpus_members_are_distinct_and_admitted() {
    for spec in [
        CorpusSpec::new(2, 4),
        CorpusSpec::new(2, 5).independent_labels().multiplicity(1),
        CorpusSpec::new(1, 3).loops(),
        CorpusSpec::new(3, 5).simple(),
    ] {
        let c = enumerate_corpus(&spec).unwrap();
        let forms = c.forms();
        assert!(forms.windows(2).all(|w| w[0] < w[1]), "{spec:?}");
        assert!(c.iter().all(|g| spec.admits(g)), "{spec:?}");
        for g in c.iter() {
            assert_eq!(
                c.position(&permute(g, &(0..g.node_count()).rev().collect::<Vec<_>>())),
                c.position(g)
            );
        }
    }
}

#[test]
fn corpus_growth_is_monotone() {
    let small = enumerate_corpus(&CorpusSpec::new(2, 4)).unwrap();
    let big = enumerate_corpus(&CorpusSpec::new(2, 5)).unwrap();
    assert!(small.iter().all(|g| big.position(g).is_some()));
}

#[test]
fn corpus_from_graphs_deduplicates() {
    let c = Corpus::from_graphs(2, [p(3), star(&p(3)).unwrap(), p(4)]).unwrap();
    assert_eq!(c.len(), 2);
    assert!(Corpus::from_graphs(2, [LabeledGraph::empty_labeled(1)]).is_err());
}

#[test]
fn oversized_corpus_is_refused() {
    let mut spec = CorpusSpec::new(2, 9);
    spec.candidate_limit = 1000;
    assert!(matches!(enumerate_corpus(&spec), Err(Error::CorpusTooLarge { .. })));
}
