//! Quantum graphs: finite formal linear combinations of k-labeled graphs.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphs::{
    canonical_form, concatenate, contract_labels, glue_product, parse_graph, star, CanonicalForm, LabeledGraph,
};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Linear combination of canonical k-labeled graphs. Zero coefficients are
/// never stored, so the zero element is the empty map.
#[derive(Clone, PartialEq, Eq)]
pub struct QuantumGraph<T> {
    k: usize,
    terms: BTreeMap<CanonicalForm, T>,
}

impl<T: Scalar> QuantumGraph<T> {
    pub fn zero(k: usize) -> Self {
        Self {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_graph(g: &LabeledGraph) -> Self {
        Self::term(T::one(), g)
    }

    pub fn term(c: T, g: &LabeledGraph) -> Self {
        let mut q = Self::zero(g.k());
        q.push(canonical_form(g), c);
        q
    }

    pub fn from_terms<'a>(k: usize, terms: impl IntoIterator<Item = (T, &'a LabeledGraph)>) -> Result<Self> {
        let mut q = Self::zero(k);
        for (c, g) in terms {
            if g.k() != k {
                return Err(Error::ArityMismatch { left: k, right: g.k() });
            }
            q.push(canonical_form(g), c);
        }
        Ok(q)
    }

    fn push(&mut self, form: CanonicalForm, c: T) {
        if c.is_negligible() {
            return;
        }
        match self.terms.entry(form) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_negligible() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalForm, &T)> {
        self.terms.iter()
    }

    /// Terms as `(coefficient, representative graph)`.
    pub fn graphs(&self) -> Vec<(T, LabeledGraph)> {
        self.terms.iter().map(|(f, c)| (c.clone(), f.to_graph())).collect()
    }

    pub fn coefficient(&self, g: &LabeledGraph) -> T {
        self.terms.get(&canonical_form(g)).cloned().unwrap_or_else(T::zero)
    }

    /// Every term is simple (no parallel edges, no loops, independent labels).
    pub fn is_simple(&self) -> bool {
        self.terms.keys().all(|f| f.to_graph().is_simple())
    }

    /// Every term has nonadjacent labeled nodes.
    pub fn labels_independent(&self) -> bool {
        self.terms.keys().all(|f| f.to_graph().labels_independent())
    }

    fn check_arity(&self, other: &Self) -> Result<usize> {
        match (self.is_zero(), other.is_zero()) {
            (true, _) => Ok(other.k),
            (_, true) => Ok(self.k),
            _ if self.k == other.k => Ok(self.k),
            _ => Err(Error::ArityMismatch {
                left: self.k,
                right: other.k,
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let k = self.check_arity(other)?;
        let mut q = self.clone();
        q.k = k;
        for (f, c) in &other.terms {
            q.push(f.clone(), c.clone());
        }
        Ok(q)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut q = Self::zero(self.k);
        for (f, a) in &self.terms {
            q.push(f.clone(), a.clone() * c.clone());
        }
        q
    }

    fn bilinear(
        &self,
        other: &Self,
        k: usize,
        op: impl Fn(&LabeledGraph, &LabeledGraph) -> Result<LabeledGraph>,
    ) -> Result<Self> {
        let mut q = Self::zero(k);
        let right = other.graphs();
        for (a, f) in self.graphs() {
            for (b, g) in &right {
                q.push(canonical_form(&op(&f, g)?), a.clone() * b.clone());
            }
        }
        Ok(q)
    }

    fn linear(&self, k: usize, op: impl Fn(&LabeledGraph) -> Result<LabeledGraph>) -> Result<Self> {
        let mut q = Self::zero(k);
        for (a, f) in self.graphs() {
            q.push(canonical_form(&op(&f)?), a);
        }
        Ok(q)
    }

    fn require_arity(&self, op: &'static str, k: usize) -> Result<()> {
        if !self.is_zero() && self.k != k {
            return Err(Error::WrongArity {
                op,
                expected: k,
                found: self.k,
            });
        }
        Ok(())
    }

    /// Bilinear extension of the gluing product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let k = self.check_arity(other)?;
        self.bilinear(other, k, glue_product)
    }

    /// Bilinear extension of concatenation.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.require_arity("concat", 2)?;
        other.require_arity("concat", 2)?;
        self.bilinear(other, 2, concatenate)
    }

    pub fn star(&self) -> Result<Self> {
        self.require_arity("star", 2)?;
        self.linear(2, star)
    }

    /// Linear extension of label contraction; fails on the first term whose
    /// labeled nodes are adjacent.
    pub fn contract(&self) -> Result<Self> {
        self.require_arity("contract", 2)?;
        self.linear(1, contract_labels)
    }

    /// Drop all labels.
    pub fn unlabel(&self) -> Self {
        self.linear(0, |g| Ok(g.forget_labels())).expect("infallible")
    }

    /// `Σ c · f(term)`; terms are evaluated in parallel.
    pub fn evaluate<F>(&self, f: F) -> Result<T>
    where
        F: Fn(&LabeledGraph) -> Result<T> + Sync,
    {
        let values: Vec<T> = self
            .terms
            .par_iter()
            .map(|(form, c)| Ok(c.clone() * f(&form.to_graph())?))
            .collect::<Result<_>>()?;
        Ok(values.into_iter().fold(T::zero(), |a, b| a + b))
    }
}

impl<T: Scalar> fmt::Display for QuantumGraph<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (form, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})[{}]", form.to_graph())?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for QuantumGraph<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuantumGraph(k={}; {})", self.k, self)
    }
}

/// Inline JSON object for a graph: `{"nodes", "labels", "edges": [[u, v, m]]}`.
pub fn graph_to_json(g: &LabeledGraph) -> Value {
    let edges: Vec<Value> = g.edges().map(|(u, v, m)| json!([u, v, m])).collect();
    json!({ "nodes": g.node_count(), "labels": g.labels(), "edges": edges })
}

pub fn graph_from_json(v: &Value) -> Result<LabeledGraph> {
    if let Some(s) = v.as_str() {
        return parse_graph(s);
    }
    let bad = |what: &str| Error::Parse(format!("graph object: {what}"));
    let nodes = v
        .get("nodes")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing `nodes`"))? as usize;
    let labels = match v.get("labels") {
        None => vec![],
        Some(l) => l
            .as_array()
            .ok_or_else(|| bad("`labels` must be an array"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| bad("label is not a node index"))
            })
            .collect::<Result<_>>()?,
    };
    let mut g = LabeledGraph::new(nodes, labels)?;
    if let Some(edges) = v.get("edges") {
        for e in edges.as_array().ok_or_else(|| bad("`edges` must be an array"))? {
            let e = e.as_array().ok_or_else(|| bad("edge must be an array"))?;
            let num = |i: usize| e.get(i).and_then(Value::as_u64);
            let (u, w) = num(0).zip(num(1)).ok_or_else(|| bad("edge needs two endpoints"))?;
            let m = if e.len() > 2 {
                num(2).ok_or_else(|| bad("bad multiplicity"))?
            } else {
                1
            };
            g.add_edge(u as usize, w as usize, m as u32)?;
        }
    }
    Ok(g)
}

impl QuantumGraph<Rational> {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(f, c)| json!({ "coef": format_rational(c), "graph": graph_to_json(&f.to_graph()) }))
            .collect();
        json!({ "k": self.k, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let k = v
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("quantum graph: missing `k`".into()))? as usize;
        let mut q = Self::zero(k);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("quantum graph: missing `terms` array".into()))?;
        for t in terms {
            let coef = match t.get("coef") {
                Some(Value::String(s)) => parse_rational(s)?,
                Some(Value::Number(n)) => parse_rational(&n.to_string())?,
                None => Rational::from_int(1),
                Some(other) => return Err(Error::Parse(format!("bad coefficient {other}"))),
            };
            let g = graph_from_json(
                t.get("graph")
                    .ok_or_else(|| Error::Parse("quantum graph term: missing `graph`".into()))?,
            )?;
            if g.k() != k {
                return Err(Error::ArityMismatch { left: k, right: g.k() });
            }
            q.push(canonical_form(&g), coef);
        }
        Ok(q)
    }
}
