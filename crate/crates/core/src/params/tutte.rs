use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graphs::{canonical_form, CanonicalForm, LabeledGraph};
use crate::scalar::Scalar;

/// `Σ_{A ⊆ E} q^{c(A)} v^{|A|}` as a bivariate integer polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TuttePolynomial {
    /// `(q-exponent, v-exponent) → coefficient`, no zero entries.
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl TuttePolynomial {
    pub fn coefficient(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn evaluate<T: Scalar>(&self, q: &T, v: &T) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, (&(i, j), c)| {
            acc + T::from_bigint(c) * q.pow_u(i) * v.pow_u(j)
        })
    }

    /// Build from raw coefficients; zero entries are dropped.
    pub fn from_coefficients(coeffs: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut map: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (e, c) in coeffs {
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { coeffs: map }
    }

    fn from_dense(d: &Dense) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, row) in d.0.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    coeffs.insert((i as u32, j as u32), c.clone());
                }
            }
        }
        Self { coeffs }
    }
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.coeffs.iter().rev() {
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("q".to_string()),
                _ => mono.push(format!("q^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push("v".to_string()),
                _ => mono.push(format!("v^{j}")),
            }
            let neg = c < &BigInt::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            let sep = match (first, neg) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            write!(f, "{sep}")?;
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Dense coefficients `[q-exponent][v-exponent]`.
#[derive(Clone)]
struct Dense(Vec<Vec<BigInt>>);

impl Dense {
    fn one() -> Self {
        Dense(vec![vec![BigInt::one()]])
    }

    fn add(&self, o: &Self) -> Self {
        let rows = self.0.len().max(o.0.len());
        let mut out = vec![Vec::new(); rows];
        for (i, row) in out.iter_mut().enumerate() {
            let a = self.0.get(i).map_or(&[][..], |r| &r[..]);
            let b = o.0.get(i).map_or(&[][..], |r| &r[..]);
            *row = (0..a.len().max(b.len()))
                .map(|j| a.get(j).cloned().unwrap_or_default() + b.get(j).cloned().unwrap_or_default())
                .collect();
        }
        Dense(out)
    }

    fn mul(&self, o: &Self) -> Self {
        let rows = self.0.len() + o.0.len() - 1;
        let cols = self.0.iter().map(Vec::len).max().unwrap_or(0) + o.0.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![vec![BigInt::zero(); cols.max(1)]; rows];
        for (i, ra) in self.0.iter().enumerate() {
            for (j, a) in ra.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, rb) in o.0.iter().enumerate() {
                    for (l, b) in rb.iter().enumerate() {
                        if !b.is_zero() {
                            out[i + k][j + l] += a * b;
                        }
                    }
                }
            }
        }
        Dense(out)
    }

    /// `q^e`.
    fn q_pow(e: usize) -> Self {
        let mut rows = vec![vec![BigInt::zero()]; e + 1];
        rows[e][0] = BigInt::one();
        Dense(rows)
    }

    /// `(1 + v)^m − 1` when `minus_one`, else `(1 + v)^m`.
    fn one_plus_v_pow(m: u32, minus_one: bool) -> Self {
        let mut row = vec![BigInt::one()];
        for _ in 0..m {
            let mut next = vec![BigInt::zero(); row.len() + 1];
            for (j, c) in row.iter().enumerate() {
                next[j] += c;
                next[j + 1] += c;
            }
            row = next;
        }
        if minus_one {
            row[0] -= 1;
        }
        Dense(vec![row])
    }
}

struct Memo(HashMap<CanonicalForm, Dense>);

impl Memo {
    fn z(&mut self, g: &LabeledGraph) -> Dense {
        let mut g = g.clone();
        let mut factor = Dense::one();
        let loops: Vec<(usize, u32)> = g.edges().filter(|e| e.0 == e.1).map(|e| (e.0, e.2)).collect();
        for (u, m) in loops {
            g.remove_edge_class(u, u);
            factor = factor.mul(&Dense::one_plus_v_pow(m, false));
        }
        let isolated: Vec<usize> = (0..g.node_count()).filter(|&x| g.degree(x) == 0).collect();
        for &x in isolated.iter().rev() {
            g = g.remove_node(x);
        }
        factor = factor.mul(&Dense::q_pow(isolated.len()));
        if g.node_count() == 0 {
            return factor;
        }
        let comps = g.components();
        if comps.len() > 1 {
            for comp in comps {
                let keep: Vec<usize> = (0..g.node_count()).filter(|x| !comp.contains(x)).collect();
                let mut part = g.clone();
                for &x in keep.iter().rev() {
                    part = part.remove_node(x);
                }
                factor = factor.mul(&self.z(&part));
            }
            return factor;
        }
        let key = canonical_form(&g);
        if let Some(d) = self.0.get(&key) {
            return factor.mul(d);
        }
        // Split on an edge class at a node of least degree.
        let x = (0..g.node_count()).min_by_key(|&x| g.degree(x)).expect("nonempty");
        let (u, v, m) = g
            .edges()
            .find(|&(a, b, _)| a == x || b == x)
            .expect("connected graph with an edge");
        let mut deleted = g.clone();
        deleted.remove_edge_class(u, v);
        let contracted = deleted.merge_nodes(u, v);
        let d = self
            .z(&deleted)
            .add(&Dense::one_plus_v_pow(m, true).mul(&self.z(&contracted)));
        self.0.insert(key, d.clone());
        factor.mul(&d)
    }
}

/// Tutte polynomial by deletion-contraction on parallel classes, memoized on
/// canonical forms. Labels are ignored.
pub fn tutte_poly(g: &LabeledGraph) -> TuttePolynomial {
    let mut memo = Memo(HashMap::new());
    TuttePolynomial::from_dense(&memo.z(&g.forget_labels()))
}

pub fn tut<T: Scalar>(g: &LabeledGraph, q: &T, v: &T) -> T {
    tutte_poly(g).evaluate(q, v)
}

/// Chromatic polynomial `tut(G; x, −1)`.
pub fn chr<T: Scalar>(g: &LabeledGraph, x: &T) -> T {
    tut(g, x, &-T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::subset_sum_tutte;
    use crate::scalar::{int, rat, Rational};
    use proptest::prelude::*;

    #[test]
    fn small_polynomials() {
        assert_eq!(tutte_poly(&LabeledGraph::complete(1)).to_string(), "q");
        assert_eq!(tutte_poly(&LabeledGraph::complete(2)).to_string(), "q^2 + q*v");
        let empty = LabeledGraph::unlabeled(0, &[]).unwrap();
        assert_eq!(tut(&empty, &int(7), &int(3)), int(1));
        assert_eq!(chr(&LabeledGraph::complete(3), &int(3)), int(6));
        assert_eq!(chr(&LabeledGraph::cycle(4), &int(3)), int(18));
        let looped = LabeledGraph::unlabeled(1, &[(0, 0)]).unwrap();
        assert_eq!(chr(&looped, &rat(5, 2)), int(0));
    }

    fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
        (0usize..6, proptest::collection::vec((0usize..6, 0usize..6), 0..9)).prop_map(|(n, edges)| {
            let mut g = LabeledGraph::unlabeled(n, &[]).unwrap();
            if n > 0 {
                for (u, v) in edges {
                    g.add_edge(u % n, v % n, 1).unwrap();
                }
            }
            g
        })
    }

    proptest! {
        #[test]
        fn agrees_with_subset_sum(g in arb_graph()) {
            prop_assert_eq!(tutte_poly(&g), subset_sum_tutte(&g));
        }

        #[test]
        fn multiplicative_over_disjoint_union(a in arb_graph(), b in arb_graph(), q in -3i64..4, v in -3i64..4) {
            let (q, v): (Rational, Rational) = (int(q), int(v));
            prop_assert_eq!(tut(&a.disjoint_union(&b), &q, &v), tut(&a, &q, &v) * tut(&b, &q, &v));
        }
    }
}
