//! Construction and verification of contractors and connectors.
//!
//! For `f = hom(., H)` a 2-labeled quantum graph `x` is represented by its
//! matrix `M(x)_{ij} = hom_{1↦i, 2↦j}(x, H)`. Under this map gluing becomes
//! the Schur product, concatenation becomes `X · diag(α) · Y` and the star
//! becomes transposition. A contractor is an `x` with `M(x) = diag(α)⁻¹`
//! (the identity when all node weights are 1), a connector a simple `x`
//! with `M(x) = β`.

use std::fmt;

use rayon::prelude::*;

use crate::connalg::connection_matrix;
use crate::error::{Error, Result};
use crate::graphs::{concatenate, glue_product, star, Corpus, LabeledGraph};
use crate::linalg::{Matrix, SpanBasis};
use crate::params::{profile, Parameter, WeightedGraph};
use crate::quantum::QuantumGraph;
use crate::scalar::Scalar;

/// `M(x)` for a 2-labeled quantum graph.
pub fn matrix_of<T: Scalar>(x: &QuantumGraph<T>, h: &WeightedGraph<T>) -> Result<Matrix<T>> {
    if !x.is_zero() && x.k() != 2 {
        return Err(Error::WrongArity {
            op: "matrix_of",
            expected: 2,
            found: x.k(),
        });
    }
    let n = h.node_count();
    if x.is_zero() {
        return Ok(Matrix::zeros(n, n));
    }
    Ok(profile(x, h).to_matrix().expect("arity 2"))
}

/// Monic polynomial, coefficients from the constant term up.
#[derive(Clone, PartialEq)]
pub struct MinimalPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> MinimalPolynomial<T> {
    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `p(A)`.
    pub fn eval_matrix(&self, a: &Matrix<T>) -> Matrix<T> {
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&Matrix::identity(n).scale(c));
        }
        acc
    }
}

impl<T: Scalar> fmt::Display for MinimalPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            let (neg, abs) = if c.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                _ => {}
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({abs})*{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for MinimalPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Least-degree monic annihilator of a square matrix: the first linear
/// dependence among `I, A, A², …`.
pub fn minimal_polynomial<T: Scalar>(a: &Matrix<T>) -> Result<MinimalPolynomial<T>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix is not square",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut basis = SpanBasis::new(n * n);
    let mut power = Matrix::identity(n);
    loop {
        match basis.insert(power.as_slice()) {
            Ok(_) => power = power.mul(a),
            Err(c) => {
                let mut coeffs: Vec<T> = c.into_iter().map(|x| -x).collect();
                coeffs.push(T::one());
                return Ok(MinimalPolynomial { coeffs });
            }
        }
    }
}

fn reduce_with_notice<T: Scalar>(h: &WeightedGraph<T>) -> WeightedGraph<T> {
    let r = h.twin_reduce();
    if r.node_count() != h.node_count() {
        log::info!(
            "merged twins: target reduced from {} to {} nodes",
            h.node_count(),
            r.node_count()
        );
    }
    r
}

/// A pair of rows that is parallel with one fixed ratio in every matrix.
fn parallel_rows<T: Scalar>(mats: &[&Matrix<T>]) -> Option<(usize, usize)> {
    let n = mats.first()?.rows();
    for i in 0..n {
        for j in i + 1..n {
            // ratio r with row_i = r * row_j, fixed by the first nonzero entry seen
            let mut ratio: Option<T> = None;
            let ok = mats.iter().all(|m| {
                (0..n).all(|c| {
                    let (a, b) = (m[(i, c)].clone(), m[(j, c)].clone());
                    if b.is_zero() {
                        return a.is_zero();
                    }
                    let r = a / b;
                    match &ratio {
                        Some(x) => *x == r,
                        None => {
                            ratio = Some(r);
                            true
                        }
                    }
                })
            });
            if ok {
                return Some((i, j));
            }
        }
    }
    None
}

fn path_graph(n: usize) -> LabeledGraph {
    LabeledGraph::path(n).expect("n >= 2")
}

/// Quantum path `y = Σ a_s P_{s+1}` with `M(y) = β`, read off from the
/// minimal polynomial `m = z^e h` of `β · diag(α)`: `1 − h(z)/h(0) =
/// Σ a_s z^{s−1}`. Twins are merged first.
pub fn synth_connector<T: Scalar>(h: &WeightedGraph<T>) -> Result<QuantumGraph<T>> {
    let h = reduce_with_notice(h);
    if h.beta().is_zero() {
        return Ok(QuantumGraph::zero(2));
    }
    let a = h.beta().mul(&Matrix::diagonal(h.alpha()));
    let m = minimal_polynomial(&a)?;
    let e = m.coeffs.iter().position(|c| !c.is_zero()).expect("monic");
    let hz = &m.coeffs[e..];
    let h0 = hz[0].clone();
    let mut y = QuantumGraph::zero(2);
    for (i, c) in hz.iter().enumerate().skip(1) {
        // Coefficient of z^i in 1 − g is −c/h0; it multiplies P_{i+2}.
        let a_s = -(c.clone() / h0.clone());
        if !a_s.is_zero() {
            y = y.add(&QuantumGraph::term(a_s, &path_graph(i + 2)))?;
        }
    }
    Ok(y)
}

/// Series-parallel construction of a 2-labeled graph from `K_2`.
#[derive(Clone, PartialEq, Eq)]
pub enum SpExpr {
    K2,
    Glue(Box<SpExpr>, Box<SpExpr>),
    Concat(Box<SpExpr>, Box<SpExpr>),
    Star(Box<SpExpr>),
}

impl SpExpr {
    pub fn build(&self) -> LabeledGraph {
        match self {
            SpExpr::K2 => LabeledGraph::complete_labeled(2),
            SpExpr::Glue(a, b) => glue_product(&a.build(), &b.build()).expect("2-labeled"),
            SpExpr::Concat(a, b) => concatenate(&a.build(), &b.build()).expect("2-labeled"),
            SpExpr::Star(a) => star(&a.build()).expect("2-labeled"),
        }
    }
}

impl fmt::Display for SpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpExpr::K2 => write!(f, "K2"),
            SpExpr::Glue(a, b) => write!(f, "({a} * {b})"),
            SpExpr::Concat(a, b) => write!(f, "({a} o {b})"),
            SpExpr::Star(a) => write!(f, "{a}^*"),
        }
    }
}

impl fmt::Debug for SpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A synthesized contractor and how its terms were built.
#[derive(Clone)]
pub struct Contractor<T> {
    pub z: QuantumGraph<T>,
    /// `(coefficient, construction)` for each graph used.
    pub trace: Vec<(T, SpExpr)>,
    /// Twin-free target the construction ran on.
    pub target: WeightedGraph<T>,
}

impl<T: Scalar> fmt::Debug for Contractor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Contractor")
            .field("z", &self.z)
            .field(
                "trace",
                &self.trace.iter().map(|(c, e)| format!("{c} {e}")).collect::<Vec<_>>(),
            )
            .finish()
    }
}

struct SpElement<T> {
    expr: SpExpr,
    nodes: usize,
    edges: usize,
    matrix: Matrix<T>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Op {
    Glue(usize, usize),
    Concat(usize, usize),
    Star(usize),
}

/// `diag(α)⁻¹`: attaching `z` then contributes `α_i² · M(z)_{ii} = α_i` at
/// the merged node, as identifying the labeled nodes does.
pub fn contractor_target<T: Scalar>(h: &WeightedGraph<T>) -> Matrix<T> {
    Matrix::diagonal(&h.alpha().iter().map(|a| T::one() / a.clone()).collect::<Vec<_>>())
}

/// Series-parallel contractor `z` with `M(z) = diag(α)⁻¹`, for the
/// twin-reduced target.
pub fn synth_contractor<T: Scalar>(h: &WeightedGraph<T>) -> Result<Contractor<T>> {
    let h = reduce_with_notice(h);
    let target = contractor_target(&h);
    synth_series_parallel(&h, &target)
}

/// Series-parallel quantum graph `z` with `M(z) = target`.
///
/// Starting from `K_2`, the matrix span is closed under Schur product,
/// `X · diag(α) · Y` and transposition; each candidate is tried smallest
/// first and kept only if it enlarges the span. The target is then solved
/// for exactly in the closed span.
pub fn synth_series_parallel<T: Scalar>(h: &WeightedGraph<T>, target: &Matrix<T>) -> Result<Contractor<T>> {
    let n = h.node_count();
    if target.rows() != n || target.cols() != n {
        return Err(Error::Dimension(format!(
            "target is {}x{}, the weighted graph has {n} nodes",
            target.rows(),
            target.cols()
        )));
    }
    let beta = h.beta();
    if let Some(i) = (0..n).find(|&i| beta.row(i).iter().all(|x| x.is_zero())) {
        return Err(Error::NoContractor(format!(
            "node {i} of the twin-reduced target has an all-zero edge-weight row"
        )));
    }
    let alpha = h.alpha().to_vec();
    let mut span = SpanBasis::new(n * n);
    let mut elems: Vec<SpElement<T>> = Vec::new();
    span.insert(beta.as_slice()).expect("nonzero");
    elems.push(SpElement {
        expr: SpExpr::K2,
        nodes: 2,
        edges: 1,
        matrix: beta.clone(),
    });
    let mut tried = std::collections::BTreeSet::new();
    loop {
        let mut best: Option<((usize, usize, Op), Matrix<T>)> = None;
        let t = elems.len();
        let mut ops = Vec::new();
        for a in 0..t {
            ops.push(Op::Star(a));
            for b in 0..t {
                if a <= b {
                    ops.push(Op::Glue(a, b));
                }
                ops.push(Op::Concat(a, b));
            }
        }
        for op in ops {
            if tried.contains(&op) {
                continue;
            }
            let (size, m) = match op {
                Op::Glue(a, b) => (
                    (elems[a].nodes + elems[b].nodes - 2, elems[a].edges + elems[b].edges),
                    elems[a].matrix.schur(&elems[b].matrix),
                ),
                Op::Concat(a, b) => (
                    (elems[a].nodes + elems[b].nodes - 1, elems[a].edges + elems[b].edges),
                    elems[a].matrix.mul_diag_mul(&alpha, &elems[b].matrix),
                ),
                Op::Star(a) => ((elems[a].nodes, elems[a].edges), elems[a].matrix.transpose()),
            };
            if span.contains(m.as_slice()) {
                tried.insert(op);
                continue;
            }
            let key = (size.0, size.1, op);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, m));
            }
        }
        let Some(((nodes, edges, op), m)) = best else {
            break;
        };
        tried.insert(op);
        span.insert(m.as_slice()).expect("checked independent");
        let expr = match op {
            Op::Glue(a, b) => SpExpr::Glue(Box::new(elems[a].expr.clone()), Box::new(elems[b].expr.clone())),
            Op::Concat(a, b) => SpExpr::Concat(Box::new(elems[a].expr.clone()), Box::new(elems[b].expr.clone())),
            Op::Star(a) => SpExpr::Star(Box::new(elems[a].expr.clone())),
        };
        log::debug!("contractor closure: added {expr} (span {})", span.len());
        elems.push(SpElement {
            expr,
            nodes,
            edges,
            matrix: m,
        });
    }
    if !span.contains(target.as_slice()) {
        let mats: Vec<&Matrix<T>> = elems.iter().map(|e| &e.matrix).collect();
        if let Some((i, j)) = parallel_rows(&mats) {
            return Err(Error::NoContractor(format!(
                "rows {i} and {j} are parallel in every series-parallel matrix"
            )));
        }
    }
    let coeffs = span.express(target.as_slice()).ok_or_else(|| {
        let listing: Vec<String> = elems.iter().map(|e| format!("{} -> {:?}", e.expr, e.matrix)).collect();
        Error::Internal(format!(
            "target is not in the closed span of dimension {}; basis:\n{}",
            span.len(),
            listing.join("\n")
        ))
    })?;
    let mut z = QuantumGraph::zero(2);
    let mut trace = Vec::new();
    for (c, e) in coeffs.into_iter().zip(&elems) {
        if c.is_zero() {
            continue;
        }
        z = z.add(&QuantumGraph::term(c.clone(), &e.expr.build()))?;
        trace.push((c, e.expr.clone()));
    }
    Ok(Contractor {
        z,
        trace,
        target: h.clone(),
    })
}

/// Result of the pointwise connector check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConnectorCheck {
    /// `M(z) = β`.
    pub matches: bool,
    /// Every term of `z` is simple.
    pub simple: bool,
}

impl ConnectorCheck {
    pub fn passed(&self) -> bool {
        self.matches && self.simple
    }
}

pub fn verify_connector_pointwise<T: Scalar>(z: &QuantumGraph<T>, h: &WeightedGraph<T>) -> Result<ConnectorCheck> {
    Ok(ConnectorCheck {
        matches: matrix_of(z, h)? == *h.beta(),
        simple: z.is_simple(),
    })
}

/// `M(z) = diag(α)⁻¹`.
pub fn verify_contractor_pointwise<T: Scalar>(z: &QuantumGraph<T>, h: &WeightedGraph<T>) -> Result<bool> {
    Ok(matrix_of(z, h)? == contractor_target(h))
}

/// Verdict of a parameter-level check over a corpus.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamCheck<T> {
    Pass { checked: usize },
    Fail { graph: LabeledGraph, lhs: T, rhs: T },
}

impl<T> ParamCheck<T> {
    pub fn passed(&self) -> bool {
        matches!(self, ParamCheck::Pass { .. })
    }
}

fn first_failure<T: Scalar>(
    corpus: &Corpus,
    sides: impl Fn(&LabeledGraph) -> Result<(T, T)> + Sync,
) -> Result<ParamCheck<T>> {
    let found = corpus.graphs().par_iter().find_map_first(|g| match sides(g) {
        Err(e) => Some(Err(e)),
        Ok((lhs, rhs)) if lhs != rhs => Some(Ok(ParamCheck::Fail {
            graph: g.clone(),
            lhs,
            rhs,
        })),
        Ok(_) => None,
    });
    found.unwrap_or(Ok(ParamCheck::Pass { checked: corpus.len() }))
}

/// `f(x z) = f(x')` for every corpus member `x`, where `x'` identifies the
/// two labeled nodes. Members must have nonadjacent labeled nodes.
pub fn verify_contractor_param<T: Scalar>(
    z: &QuantumGraph<T>,
    f: &Parameter<T>,
    corpus: &Corpus,
) -> Result<ParamCheck<T>> {
    if let Some(bad) = corpus.iter().find(|g| !g.labels_independent()) {
        return Err(Error::InvalidParameter(format!(
            "contractor check needs nonadjacent labeled nodes, corpus contains {bad}"
        )));
    }
    first_failure(corpus, |x| {
        let xq = QuantumGraph::from_graph(x);
        let lhs = f.evaluate_quantum(&xq.product(z)?)?;
        let rhs = f.evaluate_quantum(&xq.contract()?)?;
        Ok((lhs, rhs))
    })
}

/// `f(z x) = f(K_2 x)` for every corpus member `x`.
pub fn verify_connector_param<T: Scalar>(
    z: &QuantumGraph<T>,
    f: &Parameter<T>,
    corpus: &Corpus,
) -> Result<ParamCheck<T>> {
    let k2 = QuantumGraph::from_graph(&LabeledGraph::complete_labeled(2));
    first_failure(corpus, |x| {
        let xq = QuantumGraph::from_graph(x);
        Ok((
            f.evaluate_quantum(&z.product(&xq)?)?,
            f.evaluate_quantum(&k2.product(&xq)?)?,
        ))
    })
}

/// `P_k ≡ Σ_{i=1}^{N} a_i P_{k+i}` modulo `hom(., H)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathRelation<T> {
    pub k: usize,
    /// `a_1, …, a_N`.
    pub coefficients: Vec<T>,
}

impl<T: Scalar> PathRelation<T> {
    /// `Σ a_i P_{k+i}`.
    pub fn right_side(&self) -> QuantumGraph<T> {
        let mut q = QuantumGraph::zero(2);
        for (i, a) in self.coefficients.iter().enumerate() {
            q = q
                .add(&QuantumGraph::term(a.clone(), &path_graph(self.k + i + 1)))
                .expect("arity 2");
        }
        q
    }
}

/// Smallest `k ≥ 2`, and for it the smallest `N`, such that the profile of
/// `P_k` lies in the span of the profiles of `P_{k+1}, …, P_{k+N}`.
pub fn find_path_relation<T: Scalar>(h: &WeightedGraph<T>) -> Result<PathRelation<T>> {
    let n = h.node_count();
    let a = h.beta().mul(&Matrix::diagonal(h.alpha()));
    // M(P_s) = A^{s-2} B.
    let mut mats = vec![h.beta().clone()];
    let limit = n * n + 2;
    let mut path_matrix = |s: usize| {
        while mats.len() <= s - 2 {
            let next = a.mul(mats.last().expect("nonempty"));
            mats.push(next);
        }
        mats[s - 2].clone()
    };
    for k in 2..=limit {
        let target = path_matrix(k);
        let mut span = SpanBasis::new(n * n);
        let mut coeffs_len = 0;
        for i in 1..=limit {
            if span.insert(path_matrix(k + i).as_slice()).is_err() {
                break;
            }
            coeffs_len = i;
            if let Some(c) = span.express(target.as_slice()) {
                return Ok(PathRelation { k, coefficients: c });
            }
        }
        log::debug!("no path relation at k={k} with up to {coeffs_len} later paths");
    }
    Err(Error::Internal(format!("no path relation found up to k={limit}")))
}

/// Outcome of the corpus-relative contractibility test.
#[derive(Clone)]
pub enum Contractibility<T> {
    /// `x ≡ 0` on the 2-labeled corpus but `f(x' w) ≠ 0` for this
    /// 1-labeled `w`.
    Refuted {
        x: QuantumGraph<T>,
        contracted: QuantumGraph<T>,
        witness: LabeledGraph,
        value: T,
    },
    NotRefuted {
        kernel_dim: usize,
    },
}

impl<T: Scalar> fmt::Debug for Contractibility<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contractibility::Refuted {
                x,
                contracted,
                witness,
                value,
            } => f
                .debug_struct("Refuted")
                .field("x", x)
                .field("contracted", contracted)
                .field("witness", &witness.to_string())
                .field("value", &value.to_string())
                .finish(),
            Contractibility::NotRefuted { kernel_dim } => {
                f.debug_struct("NotRefuted").field("kernel_dim", kernel_dim).finish()
            }
        }
    }
}

impl<T> Contractibility<T> {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Contractibility::Refuted { .. })
    }
}

/// Does `x ≡ 0 (mod f)` imply `x' ≡ 0 (mod f)`, as far as the corpora can
/// tell? Kernel elements of the Gram matrix on `corpus2` are contracted and
/// tested against `corpus1`. Differences of members with equal Gram rows are
/// tried first, smallest first, then a kernel basis.
pub fn contractible_on_corpus<T: Scalar>(
    f: &Parameter<T>,
    corpus2: &Corpus,
    corpus1: &Corpus,
) -> Result<Contractibility<T>> {
    if corpus2.k() != 2 || corpus1.k() != 1 {
        return Err(Error::InvalidParameter(
            "contractibility needs a 2-labeled and a 1-labeled corpus".into(),
        ));
    }
    let gram = connection_matrix(f, corpus2)?.matrix;
    let graphs = corpus2.graphs();
    let n = graphs.len();
    let mut candidates: Vec<QuantumGraph<T>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        if let Some(j) = (0..i).find(|&j| gram.row(j) == gram.row(i)) {
            pairs.push((j, i));
        }
    }
    pairs.sort_by_key(|&(j, i)| {
        let size = |g: &LabeledGraph| g.node_count() + g.edge_count();
        (size(&graphs[i]).max(size(&graphs[j])), j, i)
    });
    for (j, i) in pairs {
        candidates.push(
            QuantumGraph::from_graph(&graphs[j])
                .sub(&QuantumGraph::from_graph(&graphs[i]))
                .expect("same arity"),
        );
    }
    let kernel = gram.kernel();
    let kernel_dim = kernel.len();
    for v in kernel {
        candidates.push(QuantumGraph::from_terms(2, v.into_iter().zip(graphs)).expect("arity 2"));
    }
    for x in candidates {
        let contracted = x.contract()?;
        let values: Vec<T> = corpus1
            .graphs()
            .par_iter()
            .map(|w| f.evaluate_quantum(&contracted.product(&QuantumGraph::from_graph(w))?))
            .collect::<Result<_>>()?;
        if let Some((value, w)) = values
            .into_iter()
            .zip(corpus1.graphs())
            .find(|(v, _)| !v.is_negligible())
        {
            return Ok(Contractibility::Refuted {
                x,
                contracted,
                witness: w.clone(),
                value,
            });
        }
    }
    Ok(Contractibility::NotRefuted { kernel_dim })
}
