mod common;

use common::{contractible_target, graph, weighted};
use graphalg::graphs::{enumerate_corpus, CorpusSpec};
use graphalg::linalg::Matrix;
use graphalg::params::Parameter;
use graphalg::scalar::{int, rat};
use graphalg::synth::{
    contractor_target, find_path_relation, matrix_of, minimal_polynomial, synth_connector, synth_contractor,
    verify_connector_param, verify_connector_pointwise, verify_contractor_param, verify_contractor_pointwise, SpExpr,
};
use graphalg::{Error, LabeledGraph, MatrixQ, QuantumGraphQ, WeightedGraphQ};
use proptest::prelude::*;

fn q(g: &LabeledGraph) -> QuantumGraphQ {
    QuantumGraphQ::from_graph(g)
}

fn is_series_parallel(e: &SpExpr) -> bool {
    match e {
        SpExpr::K2 => true,
        SpExpr::Glue(a, b) | SpExpr::Concat(a, b) => is_series_parallel(a) && is_series_parallel(b),
        SpExpr::Star(a) => is_series_parallel(a),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrices_respect_the_operations(x in graph(2, 4, 4, false), y in graph(2, 4, 4, false), h in weighted(3)) {
        let (mx, my) = (matrix_of(&q(&x), &h).unwrap(), matrix_of(&q(&y), &h).unwrap());
        prop_assert_eq!(matrix_of(&q(&x).product(&q(&y)).unwrap(), &h).unwrap(), mx.schur(&my));
        prop_assert_eq!(matrix_of(&q(&x).concat(&q(&y)).unwrap(), &h).unwrap(), mx.mul_diag_mul(h.alpha(), &my));
        prop_assert_eq!(matrix_of(&q(&x).star().unwrap(), &h).unwrap(), mx.transpose());
    }

    #[test]
    fn path_matrices_are_powers(h in weighted(3), s in 2usize..7) {
        let a = h.beta().mul(&Matrix::diagonal(h.alpha()));
        let mut expected = h.beta().clone();
        for _ in 2..s {
            expected = a.mul(&expected);
        }
        prop_assert_eq!(matrix_of(&q(&LabeledGraph::path(s).unwrap()), &h).unwrap(), expected);
    }

    #[test]
    fn minimal_polynomial_annihilates(h in weighted(3)) {
        let a = h.beta().mul(&Matrix::diagonal(h.alpha()));
        let m = minimal_polynomial(&a).unwrap();
        prop_assert!(m.eval_matrix(&a).is_zero());
        prop_assert!(m.degree() <= a.rows());
        prop_assert_eq!(m.coefficients().last().cloned(), Some(int(1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn connectors_are_simple_paths_matching_k2(h in contractible_target(3)) {
        let y = synth_connector(&h).unwrap();
        let check = verify_connector_pointwise(&y, &h).unwrap();
        prop_assert!(check.passed());
        let corpus = enumerate_corpus(&CorpusSpec::new(2, 4).simple()).unwrap();
        prop_assert!(verify_connector_param(&y, &Parameter::Hom(h), &corpus).unwrap().passed());
    }

    #[test]
    fn contractors_identify_labels(h in contractible_target(3)) {
        let c = synth_contractor(&h).unwrap();
        prop_assert!(verify_contractor_pointwise(&c.z, &h).unwrap());
        prop_assert!(c.trace.iter().all(|(_, e)| is_series_parallel(e)));
        let rebuilt = c.trace.iter().fold(QuantumGraphQ::zero(2), |acc, (a, e)| {
            acc.add(&QuantumGraphQ::term(a.clone(), &e.build())).unwrap()
        });
        prop_assert_eq!(matrix_of(&rebuilt, &c.target).unwrap(), contractor_target(&c.target));
        let corpus = enumerate_corpus(&CorpusSpec::new(2, 4).simple().independent_labels()).unwrap();
        prop_assert!(verify_contractor_param(&c.z, &Parameter::Hom(h), &corpus).unwrap().passed());
    }

    #[test]
    fn contractors_are_concatenation_units(h in contractible_target(3), x in graph(2, 4, 4, false)) {
        let c = synth_contractor(&h).unwrap();
        prop_assume!(c.target.node_count() == h.node_count());
        let x = q(&x);
        prop_assert_eq!(matrix_of(&c.z.concat(&x).unwrap(), &h).unwrap(), matrix_of(&x, &h).unwrap());
        prop_assert_eq!(matrix_of(&x.concat(&c.z).unwrap(), &h).unwrap(), matrix_of(&x, &h).unwrap());
    }

    #[test]
    fn path_relation_starts_at_two(h in contractible_target(3)) {
        let r = find_path_relation(&h).unwrap();
        prop_assert_eq!(r.k, 2);
        prop_assert_eq!(matrix_of(&r.right_side(), &h).unwrap(), h.beta().clone());
    }
}

#[test]
fn connector_for_k2_is_p4() {
    let y = synth_connector(&WeightedGraphQ::complete(2)).unwrap();
    assert_eq!(y, q(&LabeledGraph::path(4).unwrap()));
}

#[test]
fn contractor_for_k3() {
    let h = WeightedGraphQ::complete(3);
    let c = synth_contractor(&h).unwrap();
    assert!(verify_contractor_pointwise(&c.z, &h).unwrap());
    assert_eq!(matrix_of(&c.z, &h).unwrap(), MatrixQ::identity(3));
}

#[test]
fn weighted_contractor_target_is_inverse_weights() {
    let h = WeightedGraphQ::new(
        vec![rat(1, 2), int(3)],
        MatrixQ::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(0)]]).unwrap(),
    )
    .unwrap();
    let c = synth_contractor(&h).unwrap();
    assert_eq!(matrix_of(&c.z, &h).unwrap(), MatrixQ::diagonal(&[int(2), rat(1, 3)]));
}

#[test]
fn isolated_node_has_no_contractor() {
    let h = WeightedGraphQ::new(
        vec![int(1), int(1)],
        MatrixQ::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]]).unwrap(),
    )
    .unwrap();
    assert!(matches!(synth_contractor(&h), Err(Error::NoContractor(_))));
}

#[test]
fn contractor_check_rejects_adjacent_labels() {
    let h = WeightedGraphQ::complete(3);
    let c = synth_contractor(&h).unwrap();
    let corpus = enumerate_corpus(&CorpusSpec::new(2, 3).multiplicity(1)).unwrap();
    assert!(matches!(
        verify_contractor_param(&c.z, &Parameter::Hom(h), &corpus),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn twins_are_merged_before_synthesis() {
    let h = WeightedGraphQ::new(
        vec![int(1), int(1), int(1)],
        MatrixQ::from_fn(3, 3, |i, j| int(i64::from(i.min(1) != j.min(1)))),
    )
    .unwrap();
    let c = synth_contractor(&h).unwrap();
    assert_eq!(c.target.node_count(), 2);
    assert!(verify_contractor_pointwise(&c.z, &c.target).unwrap());
    let y = synth_connector(&h).unwrap();
    assert!(verify_connector_pointwise(&y, &h).unwrap().passed());
}

fn o2() -> LabeledGraph {
    LabeledGraph::empty_labeled(2)
}

fn combo(terms: &[(graphalg::Rational, LabeledGraph)]) -> QuantumGraphQ {
    QuantumGraphQ::from_terms(2, terms.iter().map(|(c, g)| (c.clone(), g))).unwrap()
}

#[test]
fn chromatic_connector_uses_three_and_four_node_paths() {
    let corpus = enumerate_corpus(&CorpusSpec::new(2, 5).multiplicity(1)).unwrap();
    for x in [int(3), int(4), rat(5, 2)] {
        let c = int(1) / (x.clone() - int(1));
        let y = combo(&[
            (c.clone(), LabeledGraph::path(4).unwrap()),
            (-(x.clone() - int(2)) * c.clone(), LabeledGraph::path(3).unwrap()),
        ]);
        assert!(y.is_simple());
        assert!(
            verify_connector_param(&y, &Parameter::Chr(x.clone()), &corpus)
                .unwrap()
                .passed(),
            "x={x}"
        );
        // one path shorter, the same combination identifies the labels instead
        let z = combo(&[
            (c.clone(), LabeledGraph::path(3).unwrap()),
            (-(x.clone() - int(2)) * c, LabeledGraph::path(2).unwrap()),
        ]);
        if x.is_integer() {
            let n = x.to_integer().try_into().unwrap();
            assert_eq!(
                matrix_of(&z, &WeightedGraphQ::complete(n)).unwrap(),
                MatrixQ::identity(n)
            );
        }
        let independent = corpus.filtered(|g| g.labels_independent());
        assert!(
            verify_contractor_param(&z, &Parameter::Chr(x.clone()), &independent)
                .unwrap()
                .passed(),
            "x={x}"
        );
    }
}

#[test]
fn tutte_connector() {
    let corpus = enumerate_corpus(&CorpusSpec::new(2, 5).multiplicity(1)).unwrap();
    for (q, v) in [(int(3), int(2)), (int(2), int(-1)), (rat(5, 2), rat(1, 3))] {
        let y = combo(&[
            (int(1) / v.clone(), LabeledGraph::path(3).unwrap()),
            (-(int(1) + q.clone() / v.clone()), o2()),
        ]);
        assert!(y.is_simple());
        assert!(
            verify_connector_param(&y, &Parameter::Tut(q.clone(), v.clone()), &corpus)
                .unwrap()
                .passed(),
            "q={q} v={v}"
        );
    }
}

#[test]
fn nowhere_zero_flow_contractor() {
    use graphalg::params::{AbelianGroup, GroupSubset};
    let corpus = enumerate_corpus(
        &CorpusSpec::new(2, 5)
            .multiplicity(2)
            .independent_labels()
            .edges_at_most(7),
    )
    .unwrap();
    let z = combo(&[(int(1), LabeledGraph::complete_labeled(2)), (int(1), o2())]);
    for name in ["Z2", "Z3", "Z4", "Z2xZ2"] {
        let group = AbelianGroup::parse(name).unwrap();
        let f = Parameter::Flo(group.clone(), GroupSubset::nonzero(&group));
        assert!(verify_contractor_param(&z, &f, &corpus).unwrap().passed(), "{name}");
        let everything = GroupSubset::new(&group, 0..group.order()).unwrap();
        assert!(
            !verify_contractor_param(&z, &Parameter::Flo(group, everything), &corpus)
                .unwrap()
                .passed(),
            "{name}"
        );
    }
}
