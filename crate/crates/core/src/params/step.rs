use serde_json::{json, Value};

use super::{parse_matrix, parse_vector, WeightedGraph};
use crate::error::{Error, Result};
use crate::graphs::LabeledGraph;
use crate::linalg::Matrix;
use crate::scalar::{format_rational, Rational, Scalar};

/// Symmetric kernel on `[0,1]²` that is constant on each product of parts.
#[derive(Clone, PartialEq)]
pub struct StepFunction<T> {
    lengths: Vec<T>,
    values: Matrix<T>,
}

impl<T: Scalar> StepFunction<T> {
    pub fn new(lengths: Vec<T>, values: Matrix<T>) -> Result<Self> {
        let q = lengths.len();
        if q == 0 || values.rows() != q || values.cols() != q {
            return Err(Error::InvalidParameter(format!(
                "{q} parts but a {}x{} value matrix",
                values.rows(),
                values.cols()
            )));
        }
        if lengths.iter().any(|l| !l.is_positive()) {
            return Err(Error::InvalidParameter("part lengths must be positive".into()));
        }
        let total = lengths.iter().fold(T::zero(), |a, b| a + b.clone());
        if !total.approx_eq(&T::one()) {
            return Err(Error::InvalidParameter(format!("part lengths sum to {total}, not 1")));
        }
        if let Some((i, j)) = values.first_asymmetry() {
            return Err(Error::NotSymmetric(i, j));
        }
        if values.as_slice().iter().any(|v| v.is_negative() || *v > T::one()) {
            return Err(Error::InvalidParameter("step values must lie in [0, 1]".into()));
        }
        Ok(Self { lengths, values })
    }

    pub fn lengths(&self) -> &[T] {
        &self.lengths
    }

    pub fn values(&self) -> &Matrix<T> {
        &self.values
    }
}

impl<T: Scalar> std::fmt::Debug for StepFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let lengths: Vec<String> = self.lengths.iter().map(ToString::to_string).collect();
        write!(
            f,
            "StepFunction(lengths=[{}], values={:?})",
            lengths.join(", "),
            self.values
        )
    }
}

impl StepFunction<Rational> {
    pub fn to_json(&self) -> Value {
        let lengths: Vec<String> = self.lengths.iter().map(format_rational).collect();
        let values: Vec<Vec<String>> = self
            .values
            .to_rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        json!({ "lengths": lengths, "values": values })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |key: &str| {
            v.get(key)
                .ok_or_else(|| Error::Parse(format!("step function: missing `{key}`")))
        };
        Self::new(parse_vector(get("lengths")?)?, parse_matrix(get("values")?)?)
    }
}

/// Weighted graph with node weights the part lengths and edge weights the
/// step values.
pub fn step_to_weighted<T: Scalar>(w: &StepFunction<T>) -> WeightedGraph<T> {
    WeightedGraph::new(w.lengths.clone(), w.values.clone()).expect("validated step function")
}

/// `t(F, W)` summed directly over the assignments of nodes of `F` to parts.
pub fn t_step<T: Scalar>(f: &LabeledGraph, w: &StepFunction<T>) -> T {
    let q = w.lengths.len();
    let nf = f.node_count();
    let edges: Vec<(usize, usize, u32)> = f.edges().collect();
    let mut part = vec![0usize; nf];
    let mut total = T::zero();
    loop {
        let mut term = part.iter().fold(T::one(), |a, &p| a * w.lengths[p].clone());
        for &(u, v, m) in &edges {
            term = term * w.values[(part[u], part[v])].pow_u(m);
        }
        total = total + term;
        let mut i = 0;
        loop {
            if i == nf {
                return total;
            }
            part[i] += 1;
            if part[i] < q {
                break;
            }
            part[i] = 0;
            i += 1;
        }
    }
}
