//! k-labeled multigraphs, their canonical forms, and the structural
//! operations of the graph algebras (gluing, concatenation, star, label
//! contraction).

mod canonical;
mod corpus;
mod text;

pub use canonical::{canonical_form, isomorphic, CanonicalForm};
pub use corpus::{enumerate_corpus, Corpus, CorpusSpec, DEFAULT_CANDIDATE_LIMIT};
pub use text::{format_graph, parse_graph, parse_graphs};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Finite multigraph with loops, some of whose nodes carry the labels
/// `1..=k`. `labels[i]` is the node carrying label `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    nodes: usize,
    /// Multiplicity of each edge class, keyed with `u <= v`.
    edges: BTreeMap<(usize, usize), u32>,
    labels: Vec<usize>,
}

impl LabeledGraph {
    /// Edgeless graph on `nodes` nodes with the given label placement.
    pub fn new(nodes: usize, labels: Vec<usize>) -> Result<Self> {
        for (i, &v) in labels.iter().enumerate() {
            if v >= nodes {
                return Err(Error::InvalidGraph(format!(
                    "label {} on node {v} but there are only {nodes} nodes",
                    i + 1
                )));
            }
            if labels[..i].contains(&v) {
                return Err(Error::InvalidGraph(format!("node {v} carries two labels")));
            }
        }
        Ok(Self {
            nodes,
            edges: BTreeMap::new(),
            labels,
        })
    }

    /// Unlabeled graph with the given edges.
    pub fn unlabeled(nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::with_edges(nodes, vec![], edges)
    }

    pub fn with_edges(nodes: usize, labels: Vec<usize>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(nodes, labels)?;
        for &(u, v) in edges {
            g.add_edge(u, v, 1)?;
        }
        Ok(g)
    }

    /// `O_k`: k labeled nodes, no edges.
    pub fn empty_labeled(k: usize) -> Self {
        Self::new(k, (0..k).collect()).expect("valid")
    }

    /// `K_k`: complete graph on k labeled nodes.
    pub fn complete_labeled(k: usize) -> Self {
        let mut g = Self::empty_labeled(k);
        for u in 0..k {
            for v in u + 1..k {
                g.add_edge(u, v, 1).expect("valid");
            }
        }
        g
    }

    /// Unlabeled complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n, vec![]).expect("valid");
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v, 1).expect("valid");
            }
        }
        g
    }

    /// Unlabeled cycle `C_n` (n ≥ 3).
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::unlabeled(n, &edges).expect("valid")
    }

    /// `P_n`: path on `n ≥ 2` nodes with its endpoints labeled 1 and 2.
    pub fn path(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph(format!("path needs at least 2 nodes, got {n}")));
        }
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Self::with_edges(n, vec![0, n - 1], &edges)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, mult: u32) -> Result<()> {
        if u >= self.nodes || v >= self.nodes {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) out of range for {} nodes",
                self.nodes
            )));
        }
        if mult > 0 {
            *self.edges.entry(key(u, v)).or_insert(0) += mult;
        }
        Ok(())
    }

    /// Remove every parallel copy of the edge `uv`; returns the removed multiplicity.
    pub fn remove_edge_class(&mut self, u: usize, v: usize) -> u32 {
        self.edges.remove(&key(u, v)).unwrap_or(0)
    }

    /// Remove a single copy of `uv`.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let k = key(u, v);
        match self.edges.get_mut(&k) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.edges.remove(&k);
                true
            }
            None => false,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn k(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Node carrying label `i` (1-based).
    pub fn labeled_node(&self, i: usize) -> usize {
        self.labels[i - 1]
    }

    pub fn is_labeled(&self, v: usize) -> bool {
        self.labels.contains(&v)
    }

    /// Edge classes `(u, v, multiplicity)` with `u <= v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Edges listed with repetition, one entry per parallel copy.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges()
            .flat_map(|(u, v, m)| std::iter::repeat_n((u, v), m as usize))
            .collect()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.edges.get(&key(u, v)).copied().unwrap_or(0)
    }

    /// Total number of edges counted with multiplicity (loops included).
    pub fn edge_count(&self) -> usize {
        self.edges.values().map(|&m| m as usize).sum()
    }

    pub fn loop_count(&self) -> usize {
        self.edges()
            .filter(|&(u, v, _)| u == v)
            .map(|(_, _, m)| m as usize)
            .sum()
    }

    /// Degree with a loop counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges()
            .map(|(a, b, m)| {
                let m = m as usize;
                match (a == v, b == v) {
                    (true, true) => 2 * m,
                    (true, false) | (false, true) => m,
                    _ => 0,
                }
            })
            .sum()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.edges.values().copied().max().unwrap_or(0)
    }

    /// No edge joins two distinct labeled nodes.
    pub fn labels_independent(&self) -> bool {
        self.edges()
            .all(|(u, v, _)| u == v || !(self.is_labeled(u) && self.is_labeled(v)))
    }

    /// Member of the simple subalgebra: no parallel edges, no loops, and
    /// independent labeled nodes.
    pub fn is_simple(&self) -> bool {
        self.max_multiplicity() <= 1 && self.loop_count() == 0 && self.labels_independent()
    }

    /// Same graph with all labels removed.
    pub fn forget_labels(&self) -> Self {
        Self {
            nodes: self.nodes,
            edges: self.edges.clone(),
            labels: vec![],
        }
    }

    /// Same graph with a new label placement.
    pub fn relabeled(&self, labels: Vec<usize>) -> Result<Self> {
        let mut g = Self::new(self.nodes, labels)?;
        g.edges = self.edges.clone();
        Ok(g)
    }

    /// Connected components as sorted node lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.nodes).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (u, v, _) in self.edges() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.nodes {
            let r = find(&mut parent, v);
            comps.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = comps.into_values().collect();
        out.sort();
        out
    }

    /// Copy of `self` with node `b` merged into node `a`; edges `ab` become
    /// loops. Labels on `b` are dropped (callers decide what the merged node
    /// carries). Nodes above `b` shift down by one.
    pub fn merge_nodes(&self, a: usize, b: usize) -> Self {
        assert!(a != b && a < self.nodes && b < self.nodes);
        let remap = |x: usize| {
            let x = if x == b { a } else { x };
            if x > b {
                x - 1
            } else {
                x
            }
        };
        let mut edges = BTreeMap::new();
        for (u, v, m) in self.edges() {
            *edges.entry(key(remap(u), remap(v))).or_insert(0) += m;
        }
        let labels = self.labels.iter().filter(|&&x| x != b).map(|&x| remap(x)).collect();
        Self {
            nodes: self.nodes - 1,
            edges,
            labels,
        }
    }

    /// Copy with node `v` (and its incident edges) removed.
    pub fn remove_node(&self, v: usize) -> Self {
        let remap = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges()
            .filter(|&(a, b, _)| a != v && b != v)
            .map(|(a, b, m)| (key(remap(a), remap(b)), m))
            .collect();
        let labels = self.labels.iter().filter(|&&x| x != v).map(|&x| remap(x)).collect();
        Self {
            nodes: self.nodes - 1,
            edges,
            labels,
        }
    }

    /// Disjoint union; labels of `other` are appended after those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.nodes;
        let mut g = self.clone();
        g.nodes += other.nodes;
        for (u, v, m) in other.edges() {
            *g.edges.entry(key(u + off, v + off)).or_insert(0) += m;
        }
        g.labels.extend(other.labels.iter().map(|&x| x + off));
        g
    }
}

pub(crate) fn key(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Compact one-line rendering, e.g. `n=3 L[0,2] E[0-1,1-2x2]`.
impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(ToString::to_string).collect();
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v, m)| {
                if m == 1 {
                    format!("{u}-{v}")
                } else {
                    format!("{u}-{v}x{m}")
                }
            })
            .collect();
        write!(f, "n={} L[{}] E[{}]", self.nodes, labels.join(","), edges.join(","))
    }
}

fn check_same_arity(a: &LabeledGraph, b: &LabeledGraph) -> Result<()> {
    if a.k() != b.k() {
        return Err(Error::ArityMismatch {
            left: a.k(),
            right: b.k(),
        });
    }
    Ok(())
}

fn check_arity(op: &'static str, g: &LabeledGraph, k: usize) -> Result<()> {
    if g.k() != k {
        return Err(Error::WrongArity {
            op,
            expected: k,
            found: g.k(),
        });
    }
    Ok(())
}

/// Gluing product: disjoint union with equally labeled nodes identified.
pub fn glue_product(f1: &LabeledGraph, f2: &LabeledGraph) -> Result<LabeledGraph> {
    check_same_arity(f1, f2)?;
    // Map nodes of f2: labeled ones onto f1's labeled nodes, the rest appended.
    let mut map = vec![usize::MAX; f2.nodes];
    for (i, &v) in f2.labels.iter().enumerate() {
        map[v] = f1.labels[i];
    }
    let mut next = f1.nodes;
    for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut g = f1.clone();
    g.nodes = next;
    for (u, v, m) in f2.edges() {
        *g.edges.entry(key(map[u], map[v])).or_insert(0) += m;
    }
    Ok(g)
}

/// Concatenation of 2-labeled graphs: label 2 of `f1` is merged with label 1
/// of `f2` and the merged node becomes unlabeled.
pub fn concatenate(f1: &LabeledGraph, f2: &LabeledGraph) -> Result<LabeledGraph> {
    check_arity("concatenate", f1, 2)?;
    check_arity("concatenate", f2, 2)?;
    let joint = f1.labels[1];
    let mut map = vec![usize::MAX; f2.nodes];
    map[f2.labels[0]] = joint;
    let mut next = f1.nodes;
    for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut g = f1.clone();
    g.nodes = next;
    for (u, v, m) in f2.edges() {
        *g.edges.entry(key(map[u], map[v])).or_insert(0) += m;
    }
    g.labels = vec![f1.labels[0], map[f2.labels[1]]];
    Ok(g)
}

/// Swap labels 1 and 2.
pub fn star(f: &LabeledGraph) -> Result<LabeledGraph> {
    check_arity("star", f, 2)?;
    let mut g = f.clone();
    g.labels.swap(0, 1);
    Ok(g)
}

/// Identify the two labeled nodes of a 2-labeled graph whose labeled nodes
/// are nonadjacent. The result is 1-labeled.
pub fn contract_labels(f: &LabeledGraph) -> Result<LabeledGraph> {
    check_arity("contract_labels", f, 2)?;
    let (a, b) = (f.labels[0], f.labels[1]);
    if f.multiplicity(a, b) > 0 {
        return Err(Error::AdjacentLabels(f.to_string()));
    }
    let mut g = f.merge_nodes(a, b);
    let a = if a > b { a - 1 } else { a };
    g.labels = vec![a];
    Ok(g)
}

pub fn path(n: usize) -> Result<LabeledGraph> {
    LabeledGraph::path(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(g: &LabeledGraph) -> CanonicalForm {
        canonical_form(g)
    }

    fn p(n: usize) -> LabeledGraph {
        path(n).unwrap()
    }

    #[test]
    fn unit_of_gluing() {
        let f = LabeledGraph::with_edges(4, vec![1, 3], &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let o2 = LabeledGraph::empty_labeled(2);
        assert_eq!(cf(&glue_product(&o2, &f).unwrap()), cf(&f));
        assert_eq!(cf(&glue_product(&f, &o2).unwrap()), cf(&f));
    }

    #[test]
    fn gluing_two_edges_gives_double_edge() {
        let k2 = LabeledGraph::complete_labeled(2);
        let g = glue_product(&k2, &k2).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.multiplicity(0, 1), 2);
    }

    #[test]
    fn gluing_two_paths_gives_four_cycle() {
        let g = glue_product(&p(3), &p(3)).unwrap();
        // Hand-built 4-cycle with opposite nodes labeled.
        let c4 = LabeledGraph::with_edges(4, vec![0, 2], &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(cf(&g), cf(&c4));
    }

    #[test]
    fn gluing_rejects_arity_mismatch() {
        assert!(matches!(
            glue_product(&LabeledGraph::empty_labeled(1), &LabeledGraph::empty_labeled(2)),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn paths_concatenate() {
        assert_eq!(cf(&concatenate(&p(2), &p(2)).unwrap()), cf(&p(3)));
        for a in 2..6 {
            for b in 2..6 {
                assert_eq!(cf(&concatenate(&p(a), &p(b)).unwrap()), cf(&p(a + b - 1)));
            }
        }
    }

    #[test]
    fn concatenating_edge_with_pendant_gives_star() {
        // O_2 with a pendant edge hanging off label 1.
        let pend = LabeledGraph::with_edges(3, vec![0, 1], &[(0, 2)]).unwrap();
        let g = concatenate(&LabeledGraph::complete_labeled(2), &pend).unwrap();
        // Center (merged node) adjacent to label 1 and to a leaf; label 2 isolated.
        let expect = LabeledGraph::with_edges(4, vec![0, 3], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(cf(&g), cf(&expect));
        assert!(concatenate(&LabeledGraph::empty_labeled(1), &pend).is_err());
    }

    #[test]
    fn star_swaps_labels() {
        assert_eq!(cf(&star(&p(3)).unwrap()), cf(&p(3)));
        // Path 1 - a - 2 with a pendant at label 1: asymmetric.
        let g = LabeledGraph::with_edges(4, vec![0, 2], &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let s = star(&g).unwrap();
        assert_ne!(cf(&s), cf(&g));
        assert_eq!(cf(&star(&s).unwrap()), cf(&g));
    }

    #[test]
    fn contraction_examples() {
        let k1 = LabeledGraph::empty_labeled(1);
        assert_eq!(cf(&contract_labels(&LabeledGraph::empty_labeled(2)).unwrap()), cf(&k1));
        let c = contract_labels(&p(3)).unwrap();
        assert_eq!(c.node_count(), 2);
        assert_eq!(c.k(), 1);
        assert_eq!(c.multiplicity(0, 1), 2);
        assert!(matches!(
            contract_labels(&LabeledGraph::complete_labeled(2)),
            Err(Error::AdjacentLabels(_))
        ));
    }

    #[test]
    fn path_constructor() {
        assert_eq!(cf(&p(2)), cf(&LabeledGraph::complete_labeled(2)));
        assert_eq!(p(3).edge_count(), 2);
        assert_eq!(p(4).edge_count(), 3);
        assert!(path(1).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn star_reverses_concatenation() {
        let a = LabeledGraph::with_edges(4, vec![0, 2], &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let b = LabeledGraph::with_edges(3, vec![0, 1], &[(1, 2), (2, 2)]).unwrap();
        let lhs = star(&concatenate(&a, &b).unwrap()).unwrap();
        let rhs = concatenate(&star(&b).unwrap(), &star(&a).unwrap()).unwrap();
        assert_eq!(cf(&lhs), cf(&rhs));
    }

    #[test]
    fn merge_and_remove_nodes() {
        let g = LabeledGraph::with_edges(3, vec![2], &[(0, 1), (1, 2)]).unwrap();
        let m = g.merge_nodes(0, 1);
        assert_eq!(m.node_count(), 2);
        assert_eq!(m.multiplicity(0, 0), 1);
        assert_eq!(m.labels(), &[1]);
        let r = g.remove_node(1);
        assert_eq!(r.edge_count(), 0);
        assert_eq!(r.labels(), &[1]);
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(LabeledGraph::new(2, vec![0, 0]).is_err());
        assert!(LabeledGraph::new(2, vec![2]).is_err());
    }
}
