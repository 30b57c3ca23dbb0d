//! Label-preserving canonical forms.
//!
//! Labeled nodes are pinned to positions `0..k` in label order. Unlabeled
//! nodes are first split into cells by color refinement, then permuted within
//! their cells to minimize the encoding lexicographically. The search prunes
//! on prefixes and skips interchangeable twins.

use std::fmt;

use super::LabeledGraph;

/// Deterministic isomorphism-complete encoding of a [`LabeledGraph`].
///
/// Layout: `[n, k, row_0, row_1, ...]` where `row_p` lists the multiplicities
/// between position `p` and positions `0..=p` (the diagonal is the loop count).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u32>);

impl CanonicalForm {
    pub fn node_count(&self) -> usize {
        self.0[0] as usize
    }

    pub fn k(&self) -> usize {
        self.0[1] as usize
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.0[2..].iter().map(|&m| m as usize).sum()
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> LabeledGraph {
        let n = self.node_count();
        let k = self.k();
        let mut g = LabeledGraph::new(n, (0..k).collect()).expect("valid canonical form");
        let mut idx = 2;
        for p in 0..n {
            for q in 0..=p {
                let m = self.0[idx];
                idx += 1;
                if m > 0 {
                    g.add_edge(q, p, m).expect("in range");
                }
            }
        }
        g
    }

    /// Big-endian byte encoding; byte order agrees with the `Ord` impl.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|w| w.to_be_bytes()).collect()
    }

    pub fn words(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_graph())
    }
}

pub fn isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    a.node_count() == b.node_count()
        && a.k() == b.k()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

pub fn canonical_form(g: &LabeledGraph) -> CanonicalForm {
    let n = g.node_count();
    let k = g.k();
    let mut adj = vec![0u32; n * n];
    for (u, v, m) in g.edges() {
        adj[u * n + v] = m;
        adj[v * n + u] = m;
    }

    let mut fixed = Vec::with_capacity(n);
    fixed.extend_from_slice(g.labels());
    let free: Vec<usize> = (0..n).filter(|v| !g.is_labeled(*v)).collect();

    let colors = refine_colors(n, &adj, g.labels(), &free);
    let mut ordered = free.clone();
    ordered.sort_by_key(|&v| colors[v]);
    let slot_colors: Vec<u32> = ordered.iter().map(|&v| colors[v]).collect();

    let mut search = Search {
        n,
        adj: &adj,
        colors: &colors,
        slot_colors: &slot_colors,
        free: &free,
        order: fixed.clone(),
        used: vec![false; n],
        code: Vec::with_capacity(2 + n * (n + 1) / 2),
        best: None,
    };
    search.code.push(n as u32);
    search.code.push(k as u32);
    for p in 0..k {
        search.push_row(p);
    }
    search.run(k);
    CanonicalForm(search.best.expect("search reaches at least one leaf"))
}

/// Iterated 1-dimensional color refinement. Labeled nodes keep colors
/// `0..k`; unlabeled nodes get colors `>= k` ordered by their signatures, so
/// the final coloring is an isomorphism invariant.
fn refine_colors(n: usize, adj: &[u32], labels: &[usize], free: &[usize]) -> Vec<u32> {
    let k = labels.len();
    let mut colors = vec![0u32; n];
    for (i, &v) in labels.iter().enumerate() {
        colors[v] = i as u32;
    }
    let mut distinct = assign(
        free,
        |v| {
            let mut sig = vec![adj[v * n + v]];
            sig.extend(labels.iter().map(|&l| adj[v * n + l]));
            sig.push((0..n).map(|w| adj[v * n + w]).sum());
            sig
        },
        k as u32,
        &mut colors,
    );
    loop {
        let prev = colors.clone();
        let now = assign(
            free,
            |v| {
                let mut nb: Vec<(u32, u32)> = (0..n)
                    .filter(|&w| w != v && adj[v * n + w] > 0)
                    .map(|w| (prev[w], adj[v * n + w]))
                    .collect();
                nb.sort_unstable();
                let mut sig = vec![prev[v]];
                sig.extend(nb.into_iter().flat_map(|(c, m)| [c, m]));
                sig
            },
            k as u32,
            &mut colors,
        );
        if now == distinct {
            return colors;
        }
        distinct = now;
    }
}

fn assign(free: &[usize], sig: impl Fn(usize) -> Vec<u32>, base: u32, colors: &mut [u32]) -> usize {
    let sigs: Vec<Vec<u32>> = free.iter().map(|&v| sig(v)).collect();
    let mut sorted: Vec<&Vec<u32>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    for (&v, s) in free.iter().zip(&sigs) {
        let rank = sorted.binary_search(&s).expect("present");
        colors[v] = base + rank as u32;
    }
    sorted.len()
}

struct Search<'a> {
    n: usize,
    adj: &'a [u32],
    colors: &'a [u32],
    slot_colors: &'a [u32],
    free: &'a [usize],
    order: Vec<usize>,
    used: Vec<bool>,
    code: Vec<u32>,
    best: Option<Vec<u32>>,
}

impl Search<'_> {
    fn push_row(&mut self, p: usize) {
        let v = self.order[p];
        for q in 0..=p {
            let w = self.order[q];
            self.code.push(self.adj[v * self.n + w]);
        }
    }

    fn run(&mut self, pos: usize) {
        if pos == self.n {
            if self.best.as_ref().is_none_or(|b| self.code < *b) {
                self.best = Some(self.code.clone());
            }
            return;
        }
        let slot = pos - (self.n - self.free.len());
        let want = self.slot_colors[slot];
        let mut tried: Vec<usize> = Vec::new();
        for &v in self.free {
            if self.used[v] || self.colors[v] != want {
                continue;
            }
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let mark = self.code.len();
            self.order.push(v);
            self.used[v] = true;
            self.push_row(pos);
            let prune = self.best.as_ref().is_some_and(|b| self.code[..] > b[..self.code.len()]);
            if !prune {
                self.run(pos + 1);
            }
            self.code.truncate(mark);
            self.order.pop();
            self.used[v] = false;
        }
    }

    /// Swapping `a` and `b` is an automorphism fixing every other node.
    fn twins(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        self.adj[a * n + a] == self.adj[b * n + b]
            && (0..n)
                .filter(|&w| w != a && w != b)
                .all(|w| self.adj[a * n + w] == self.adj[b * n + w])
    }
}
