//! Finite truncations of the generator sets of the graph algebras.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{canonical_form, CanonicalForm, LabeledGraph};
use crate::error::{Error, Result};

/// Upper bound on generated candidate graphs before enumeration refuses.
pub const DEFAULT_CANDIDATE_LIMIT: u128 = 20_000_000;

/// Bounds and membership flags for a corpus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CorpusSpec {
    pub k: usize,
    pub max_nodes: usize,
    pub max_multiplicity: u32,
    /// Multiplicity ≤ 1, no loops, labeled nodes pairwise nonadjacent.
    pub simple_only: bool,
    /// Labeled nodes pairwise nonadjacent.
    pub labels_independent: bool,
    pub allow_loops: bool,
    /// Only keep graphs with at most this many edges (with multiplicity).
    pub max_edges: Option<usize>,
    pub candidate_limit: u128,
}

impl CorpusSpec {
    pub fn new(k: usize, max_nodes: usize) -> Self {
        Self {
            k,
            max_nodes,
            max_multiplicity: 2,
            simple_only: false,
            labels_independent: false,
            allow_loops: false,
            max_edges: None,
            candidate_limit: DEFAULT_CANDIDATE_LIMIT,
        }
    }

    pub fn multiplicity(mut self, m: u32) -> Self {
        self.max_multiplicity = m;
        self
    }

    pub fn simple(mut self) -> Self {
        self.simple_only = true;
        self
    }

    pub fn independent_labels(mut self) -> Self {
        self.labels_independent = true;
        self
    }

    pub fn loops(mut self) -> Self {
        self.allow_loops = true;
        self
    }

    pub fn edges_at_most(mut self, e: usize) -> Self {
        self.max_edges = Some(e);
        self
    }

    fn effective_multiplicity(&self) -> u32 {
        if self.simple_only {
            self.max_multiplicity.min(1)
        } else {
            self.max_multiplicity
        }
    }

    fn loops_allowed(&self) -> bool {
        self.allow_loops && !self.simple_only
    }

    fn labels_must_be_independent(&self) -> bool {
        self.simple_only || self.labels_independent
    }

    pub fn admits(&self, g: &LabeledGraph) -> bool {
        g.k() == self.k
            && g.node_count() <= self.max_nodes
            && g.max_multiplicity() <= self.effective_multiplicity()
            && (self.loops_allowed() || g.loop_count() == 0)
            && (!self.labels_must_be_independent() || g.labels_independent())
            && self.max_edges.is_none_or(|e| g.edge_count() <= e)
    }
}

/// Pairwise non-isomorphic k-labeled graphs, sorted by canonical encoding.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub spec: CorpusSpec,
    forms: Vec<CanonicalForm>,
    graphs: Vec<LabeledGraph>,
}

impl Corpus {
    /// Corpus from explicit graphs; duplicates up to isomorphism are merged.
    pub fn from_graphs(k: usize, graphs: impl IntoIterator<Item = LabeledGraph>) -> Result<Self> {
        let mut forms = Vec::new();
        let mut max_nodes = 0;
        for g in graphs {
            if g.k() != k {
                return Err(Error::ArityMismatch { left: k, right: g.k() });
            }
            max_nodes = max_nodes.max(g.node_count());
            forms.push(canonical_form(&g));
        }
        forms.sort();
        forms.dedup();
        let graphs = forms.iter().map(CanonicalForm::to_graph).collect();
        Ok(Self {
            spec: CorpusSpec::new(k, max_nodes),
            forms,
            graphs,
        })
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[CanonicalForm] {
        &self.forms
    }

    /// Canonical representatives, in corpus order.
    pub fn graphs(&self) -> &[LabeledGraph] {
        &self.graphs
    }

    pub fn iter(&self) -> impl Iterator<Item = &LabeledGraph> {
        self.graphs.iter()
    }

    pub fn position(&self, g: &LabeledGraph) -> Option<usize> {
        self.forms.binary_search(&canonical_form(g)).ok()
    }

    /// Members satisfying a predicate, keeping the order.
    pub fn filtered(&self, keep: impl Fn(&LabeledGraph) -> bool) -> Self {
        let (forms, graphs) = self
            .forms
            .iter()
            .zip(&self.graphs)
            .filter(|(_, g)| keep(g))
            .map(|(f, g)| (f.clone(), g.clone()))
            .unzip();
        Self {
            spec: self.spec.clone(),
            forms,
            graphs,
        }
    }
}

/// All attachment vectors of a new node to `existing` nodes.
fn attachments(existing: usize, max_mult: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..existing {
        let mut next = Vec::with_capacity(out.len() * (max_mult as usize + 1));
        for prefix in &out {
            for m in 0..=max_mult {
                let mut p = prefix.clone();
                p.push(m);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Enumerate every k-labeled multigraph within the bounds, one per
/// isomorphism class.
///
/// Graphs on `n` nodes are produced by attaching a new unlabeled node in
/// every possible way to each class on `n - 1` nodes; every graph with an
/// unlabeled node arises this way, so the enumeration is exhaustive.
pub fn enumerate_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    if spec.max_nodes < spec.k {
        return Err(Error::InvalidGraph(format!(
            "max_nodes {} is smaller than k {}",
            spec.max_nodes, spec.k
        )));
    }
    let k = spec.k;
    let mult = spec.effective_multiplicity();
    let loop_choices = if spec.loops_allowed() { mult + 1 } else { 1 };
    let independent = spec.labels_must_be_independent();

    // Base level: edges among labeled nodes only (all pinned, so no symmetry).
    let mut base = vec![LabeledGraph::empty_labeled(k)];
    let label_pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|u| (u..k).map(move |v| (u, v)))
        .filter(|&(u, v)| if u == v { spec.loops_allowed() } else { !independent })
        .collect();
    for &(u, v) in &label_pairs {
        let cap = if u == v { loop_choices - 1 } else { mult };
        let mut next = Vec::new();
        for g in &base {
            for m in 0..=cap {
                let mut h = g.clone();
                h.add_edge(u, v, m)?;
                next.push(h);
            }
        }
        base = next;
    }

    let mut estimate: u128 = base.len() as u128;
    let mut all: Vec<CanonicalForm> = base.iter().map(canonical_form).collect();
    let mut level = all.clone();

    for n in k + 1..=spec.max_nodes {
        let existing = n - 1;
        let per_graph = (mult as u128 + 1).saturating_pow(existing as u32) * loop_choices as u128;
        estimate = estimate.saturating_add(level.len() as u128 * per_graph);
        if estimate > spec.candidate_limit {
            return Err(Error::CorpusTooLarge {
                estimate,
                limit: spec.candidate_limit,
            });
        }
        let attach = attachments(existing, mult);
        let mut next: Vec<CanonicalForm> = level
            .par_iter()
            .flat_map_iter(|form| {
                let g = form.to_graph();
                let attach = &attach;
                (0..loop_choices).flat_map(move |loops| {
                    let g = g.clone();
                    attach.iter().map(move |a| {
                        let mut h = LabeledGraph::new(n, g.labels().to_vec()).expect("valid");
                        for (u, v, m) in g.edges() {
                            h.add_edge(u, v, m).expect("in range");
                        }
                        for (v, &m) in a.iter().enumerate() {
                            h.add_edge(v, existing, m).expect("in range");
                        }
                        h.add_edge(existing, existing, loops).expect("in range");
                        canonical_form(&h)
                    })
                })
            })
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        if let Some(e) = spec.max_edges {
            next.retain(|f| f.edge_count() <= e);
        }
        next.sort();
        all.extend(next.iter().cloned());
        level = next;
    }

    all.sort();
    if let Some(e) = spec.max_edges {
        all.retain(|f| f.edge_count() <= e);
    }
    let graphs = all.iter().map(CanonicalForm::to_graph).collect();
    let forms = all;
    Ok(Corpus {
        spec: spec.clone(),
        forms,
        graphs,
    })
}
