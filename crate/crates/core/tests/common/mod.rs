#![allow(dead_code)]

use graphalg::linalg::Matrix;
use graphalg::params::WeightedGraph;
use graphalg::scalar::{rat, Rational};
use graphalg::LabeledGraph;
use proptest::prelude::*;

/// k-labeled multigraph on at most `max_nodes` nodes; labels sit on the
/// first k nodes.
pub fn graph(k: usize, max_nodes: usize, max_edges: usize, loops: bool) -> impl Strategy<Value = LabeledGraph> {
    (k.max(1)..=max_nodes.max(k.max(1))).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_edges).prop_map(move |edges| {
            let edges: Vec<(usize, usize)> = edges.into_iter().filter(|&(u, v)| loops || u != v).collect();
            LabeledGraph::with_edges(n, (0..k).collect(), &edges).unwrap()
        })
    })
}

/// Same as [`graph`] but with the labeled nodes pairwise nonadjacent.
pub fn independent_graph(k: usize, max_nodes: usize, max_edges: usize) -> impl Strategy<Value = LabeledGraph> {
    graph(k, max_nodes, max_edges, false).prop_map(move |g| {
        let mut h = g.clone();
        for a in 0..k {
            for b in 0..k {
                if a < b {
                    h.remove_edge_class(a, b);
                }
            }
        }
        h
    })
}

/// Graph together with a permutation of its nodes.
pub fn graph_and_perm(
    k: usize,
    max_nodes: usize,
    max_edges: usize,
) -> impl Strategy<Value = (LabeledGraph, Vec<usize>)> {
    graph(k, max_nodes, max_edges, true).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Relabel nodes by `p`: node `v` becomes `p[v]`.
pub fn permute(g: &LabeledGraph, p: &[usize]) -> LabeledGraph {
    let labels = g.labels().iter().map(|&v| p[v]).collect();
    let mut h = LabeledGraph::new(g.node_count(), labels).unwrap();
    for (u, v, m) in g.edges() {
        h.add_edge(p[u], p[v], m).unwrap();
    }
    h
}

/// Weighted graph on 1 to `max_nodes` nodes with small rational weights.
pub fn weighted(max_nodes: usize) -> impl Strategy<Value = WeightedGraph<Rational>> {
    (1..=max_nodes).prop_flat_map(|n| {
        (
            proptest::collection::vec((1i64..=3, 1i64..=2), n),
            proptest::collection::vec((0i64..=2, 1i64..=2), n * n),
        )
            .prop_map(move |(a, b)| {
                let alpha = a.into_iter().map(|(p, q)| rat(p, q)).collect();
                let beta = Matrix::from_fn(n, n, |i, j| {
                    let (p, q) = b[i.min(j) * n + i.max(j)];
                    rat(p, q)
                });
                WeightedGraph::new(alpha, beta).unwrap()
            })
    })
}

/// Twin-free weighted graph with no all-zero row.
pub fn contractible_target(max_nodes: usize) -> impl Strategy<Value = WeightedGraph<Rational>> {
    weighted(max_nodes).prop_filter("twin-free, no zero row", |h| {
        let n = h.node_count();
        h.is_twin_free() && (0..n).all(|i| h.beta().row(i).iter().any(|x| *x != rat(0, 1)))
    })
}
