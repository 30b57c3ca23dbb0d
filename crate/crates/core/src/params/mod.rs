//! Graph parameters: weighted homomorphism functions and the classical
//! polynomial and counting invariants, all evaluated exactly.

mod counting;
mod flow;
mod hom;
mod step;
mod symmetry;
mod tutte;

pub use counting::{eul, expt, perf};
pub use flow::{flo, flo_oriented, AbelianGroup, GroupSubset};
pub use hom::{hom, hom_phi, hom_table, inj, profile, t, t0, HomProfile};
pub use step::{step_to_weighted, t_step, StepFunction};
pub use symmetry::{automorphism_orbit_count, automorphisms};
pub use tutte::{chr, tut, tutte_poly, TuttePolynomial};

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphs::LabeledGraph;
use crate::linalg::Matrix;
use crate::quantum::QuantumGraph;
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Target graph of a homomorphism function: positive node weights `alpha`
/// and a symmetric edge-weight matrix `beta` whose diagonal holds loop
/// weights.
#[derive(Clone, PartialEq)]
pub struct WeightedGraph<T> {
    alpha: Vec<T>,
    beta: Matrix<T>,
}

impl<T: Scalar> WeightedGraph<T> {
    pub fn new(alpha: Vec<T>, beta: Matrix<T>) -> Result<Self> {
        if beta.rows() != alpha.len() || beta.cols() != alpha.len() {
            return Err(Error::InvalidWeightedGraph(format!(
                "{} node weights but a {}x{} edge-weight matrix",
                alpha.len(),
                beta.rows(),
                beta.cols()
            )));
        }
        if let Some(i) = alpha.iter().position(|a| !a.is_positive()) {
            return Err(Error::InvalidWeightedGraph(format!(
                "node weight {} of node {i} is not positive",
                alpha[i]
            )));
        }
        if let Some((i, j)) = beta.first_asymmetry() {
            return Err(Error::NotSymmetric(i, j));
        }
        Ok(Self { alpha, beta })
    }

    /// Unit node weights; `beta` is the adjacency matrix of `g` with edge
    /// multiplicities (loops on the diagonal). Labels are ignored.
    pub fn unweighted(g: &LabeledGraph) -> Self {
        let n = g.node_count();
        let mut beta = Matrix::zeros(n, n);
        for (u, v, m) in g.edges() {
            let m = T::from_int(m as i64);
            beta[(u, v)] = m.clone();
            beta[(v, u)] = m;
        }
        Self {
            alpha: vec![T::one(); n],
            beta,
        }
    }

    /// Unweighted complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        Self::unweighted(&LabeledGraph::complete(n))
    }

    /// Unweighted path on `n` nodes.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::unweighted(&LabeledGraph::unlabeled(n, &edges).expect("valid"))
    }

    pub fn node_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[T] {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix<T> {
        &self.beta
    }

    /// Total node weight.
    pub fn total_weight(&self) -> T {
        self.alpha.iter().fold(T::zero(), |a, b| a + b.clone())
    }

    /// Unit node weights and 0/1 edge weights.
    pub fn is_unweighted(&self) -> bool {
        self.alpha.iter().all(|a| a.is_one()) && self.beta.as_slice().iter().all(|b| b.is_zero() || b.is_one())
    }

    /// Merge nodes with identical `beta` rows, adding their node weights,
    /// until no twins remain. Homomorphism numbers are unchanged.
    pub fn twin_reduce(&self) -> Self {
        let mut cur = self.clone();
        loop {
            let n = cur.node_count();
            let mut rep: Vec<usize> = Vec::new();
            let mut class = vec![0; n];
            for (i, cls) in class.iter_mut().enumerate() {
                match rep.iter().position(|&r| cur.beta.row(r) == cur.beta.row(i)) {
                    Some(c) => *cls = c,
                    None => {
                        *cls = rep.len();
                        rep.push(i);
                    }
                }
            }
            if rep.len() == n {
                return cur;
            }
            let mut alpha = vec![T::zero(); rep.len()];
            for i in 0..n {
                alpha[class[i]] = alpha[class[i]].clone() + cur.alpha[i].clone();
            }
            let beta = cur.beta.principal_submatrix(&rep);
            cur = Self { alpha, beta };
        }
    }

    pub fn is_twin_free(&self) -> bool {
        self.twin_reduce().node_count() == self.node_count()
    }
}

impl<T: Scalar> fmt::Debug for WeightedGraph<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<String> = self.alpha.iter().map(ToString::to_string).collect();
        write!(f, "WeightedGraph(alpha=[{}], beta={:?})", alpha.join(", "), self.beta)
    }
}

impl WeightedGraph<Rational> {
    pub fn to_json(&self) -> Value {
        let alpha: Vec<String> = self.alpha.iter().map(format_rational).collect();
        let beta: Vec<Vec<String>> = self
            .beta
            .to_rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        json!({ "alpha": alpha, "beta": beta })
    }

    /// Parse `{"alpha": [...], "beta": [[...]]}`; entries are fraction
    /// strings or JSON numbers. A missing `alpha` means unit weights.
    pub fn from_json(v: &Value) -> Result<Self> {
        let beta = parse_matrix(
            v.get("beta")
                .ok_or_else(|| Error::Parse("weighted graph: missing `beta`".into()))?,
        )?;
        let alpha = match v.get("alpha") {
            Some(a) => parse_vector(a)?,
            None => vec![Rational::from_int(1); beta.rows()],
        };
        Self::new(alpha, beta)
    }
}

pub(crate) fn parse_scalar(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

pub(crate) fn parse_vector(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, found {v}")))?
        .iter()
        .map(parse_scalar)
        .collect()
}

pub(crate) fn parse_matrix(v: &Value) -> Result<Matrix<Rational>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of rows, found {v}")))?
        .iter()
        .map(parse_vector)
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// A graph parameter together with its parameter point.
#[derive(Clone)]
pub enum Parameter<T> {
    Hom(WeightedGraph<T>),
    Inj(WeightedGraph<T>),
    /// Homomorphism density `t(., H)`.
    Density(WeightedGraph<T>),
    Perf,
    Chr(T),
    Tut(T, T),
    Flo(AbelianGroup, GroupSubset),
    Expt,
    Eul,
}

impl<T: Scalar> Parameter<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Parameter::Hom(_) => "hom",
            Parameter::Inj(_) => "inj",
            Parameter::Density(_) => "t",
            Parameter::Perf => "perf",
            Parameter::Chr(_) => "chr",
            Parameter::Tut(..) => "tut",
            Parameter::Flo(..) => "flo",
            Parameter::Expt => "expt",
            Parameter::Eul => "eul",
        }
    }

    /// Human-readable parameter point, empty when there is none.
    pub fn point(&self) -> String {
        match self {
            Parameter::Hom(h) | Parameter::Inj(h) | Parameter::Density(h) => {
                format!("H on {} nodes", h.node_count())
            }
            Parameter::Chr(x) => format!("x={x}"),
            Parameter::Tut(q, v) => format!("q={q}, v={v}"),
            Parameter::Flo(g, s) => format!("{g}, |S|={}", s.len()),
            _ => String::new(),
        }
    }

    /// Value on the underlying unlabeled graph of `g`.
    pub fn evaluate(&self, g: &LabeledGraph) -> Result<T> {
        let g = g.forget_labels();
        let value = match self {
            Parameter::Hom(h) => Ok(hom(&g, h)),
            Parameter::Inj(h) => Ok(inj(&g, h)),
            Parameter::Density(h) => Ok(t(&g, h)),
            Parameter::Perf => Ok(T::from_bigint(&perf(&g))),
            Parameter::Chr(x) => Ok(chr(&g, x)),
            Parameter::Tut(q, v) => Ok(tut(&g, q, v)),
            Parameter::Flo(grp, s) => flo(&g, grp, s).map(|n| T::from_bigint(&n)),
            Parameter::Expt => Ok(expt(&g)),
            Parameter::Eul => Ok(T::from_bigint(&eul(&g))),
        };
        value.map_err(|e| Error::Evaluation {
            param: self.name().into(),
            graph: g.to_string(),
            reason: e.to_string(),
        })
    }

    /// Linear extension to quantum graphs.
    pub fn evaluate_quantum(&self, x: &QuantumGraph<T>) -> Result<T> {
        x.evaluate(|g| self.evaluate(g))
    }
}

impl<T: Scalar> fmt::Debug for Parameter<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Scalar> fmt::Display for Parameter<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.point();
        if p.is_empty() {
            write!(f, "{}", self.name())
        } else {
            write!(f, "{}({})", self.name(), p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn validates_weights() {
        let beta = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(2), int(0)]]).unwrap();
        assert_eq!(
            WeightedGraph::new(vec![int(1), int(1)], beta).unwrap_err(),
            Error::NotSymmetric(0, 1)
        );
        let beta = Matrix::<Rational>::identity(2);
        assert!(WeightedGraph::new(vec![int(1), int(0)], beta).is_err());
    }

    #[test]
    fn twin_reduction() {
        let iso = WeightedGraph::<Rational>::unweighted(&LabeledGraph::unlabeled(2, &[]).unwrap());
        let r = iso.twin_reduce();
        assert_eq!(r.node_count(), 1);
        assert_eq!(r.alpha(), &[int(2)]);
        let k3 = WeightedGraph::<Rational>::complete(3);
        assert_eq!(k3.twin_reduce(), k3);
        // K_{2,2}: the two sides collapse to a weighted edge.
        let c4 = WeightedGraph::<Rational>::unweighted(&LabeledGraph::cycle(4));
        let r = c4.twin_reduce();
        assert_eq!(r.alpha(), &[int(2), int(2)]);
        assert!(r.is_twin_free());
    }

    #[test]
    fn json_round_trip() {
        let h = WeightedGraph::new(
            vec![rat(1, 2), int(3)],
            Matrix::from_rows(vec![vec![rat(1, 3), int(1)], vec![int(1), int(0)]]).unwrap(),
        )
        .unwrap();
        let v = h.to_json();
        assert_eq!(v["alpha"][0], "1/2");
        assert_eq!(WeightedGraph::from_json(&v).unwrap(), h);
        let unit = WeightedGraph::from_json(&json!({"beta": [[0, 1], [1, 0]]})).unwrap();
        assert!(unit.is_unweighted());
        assert_eq!(unit.total_weight(), int(2));
    }

    #[test]
    fn parameter_evaluation_ignores_labels() {
        let c4 = LabeledGraph::cycle(4).relabeled(vec![0, 2]).unwrap();
        assert_eq!(Parameter::<Rational>::Perf.evaluate(&c4).unwrap(), int(2));
        assert_eq!(Parameter::<Rational>::Eul.evaluate(&c4).unwrap(), int(2));
        assert_eq!(
            Parameter::Chr(int(3)).evaluate(&LabeledGraph::complete(3)).unwrap(),
            int(6)
        );
    }
}
