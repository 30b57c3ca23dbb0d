//! Weighted homomorphism numbers by variable elimination.

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::graphs::LabeledGraph;
use crate::quantum::QuantumGraph;
use crate::scalar::Scalar;

/// Table over assignments of `vars`; the first variable is most significant.
struct Factor<T> {
    vars: Vec<usize>,
    table: Vec<T>,
}

/// Product of `factors` tabulated over `scope`.
fn tabulate<T: Scalar>(factors: &[&Factor<T>], scope: &[usize], n: usize) -> Vec<T> {
    let size = n.pow(scope.len() as u32);
    let positions: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| {
            f.vars
                .iter()
                .map(|v| scope.iter().position(|s| s == v).expect("factor inside scope"))
                .collect()
        })
        .collect();
    let mut assignment = vec![0usize; scope.len()];
    let mut out = Vec::with_capacity(size);
    for idx in 0..size {
        let mut r = idx;
        for slot in assignment.iter_mut().rev() {
            *slot = r % n;
            r /= n;
        }
        let mut acc = T::one();
        for (f, pos) in factors.iter().zip(&positions) {
            let fi = pos.iter().fold(0, |a, &p| a * n + assignment[p]);
            let v = &f.table[fi];
            if v.is_zero() {
                acc = T::zero();
                break;
            }
            acc = acc * v.clone();
        }
        out.push(acc);
    }
    out
}

/// `hom_φ(F, H)` for every `φ : labels → V(H)`, indexed with label 1 most
/// significant. Unlabeled nodes carry their `α` weight, labeled ones do not;
/// each parallel edge and each loop contributes its `β` factor.
pub fn hom_table<T: Scalar>(f: &LabeledGraph, h: &WeightedGraph<T>) -> Vec<T> {
    let n = h.node_count();
    let beta = h.beta();
    let mut factors: Vec<Factor<T>> = Vec::new();
    for (u, v, m) in f.edges() {
        if u == v {
            factors.push(Factor {
                vars: vec![u],
                table: (0..n).map(|i| beta[(i, i)].pow_u(m)).collect(),
            });
        } else {
            let mut table = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    table.push(beta[(i, j)].pow_u(m));
                }
            }
            factors.push(Factor {
                vars: vec![u, v],
                table,
            });
        }
    }
    let mut free: Vec<usize> = (0..f.node_count()).filter(|&x| !f.is_labeled(x)).collect();
    for &x in &free {
        factors.push(Factor {
            vars: vec![x],
            table: h.alpha().to_vec(),
        });
    }
    while !free.is_empty() {
        // Eliminate the variable whose combined scope is smallest.
        let (best, scope) = free
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let mut scope: Vec<usize> = factors
                    .iter()
                    .filter(|f| f.vars.contains(&x))
                    .flat_map(|f| f.vars.iter().copied())
                    .filter(|&y| y != x)
                    .collect();
                scope.sort_unstable();
                scope.dedup();
                scope.push(x);
                (i, scope)
            })
            .min_by_key(|(_, s)| s.len())
            .expect("nonempty");
        let x = free.swap_remove(best);
        let (touching, rest): (Vec<_>, Vec<_>) = factors.into_iter().partition(|f| f.vars.contains(&x));
        let refs: Vec<&Factor<T>> = touching.iter().collect();
        let joint = tabulate(&refs, &scope, n);
        let table = joint
            .chunks(n)
            .map(|c| c.iter().fold(T::zero(), |a, b| a + b.clone()))
            .collect();
        factors = rest;
        factors.push(Factor {
            vars: scope[..scope.len() - 1].to_vec(),
            table,
        });
    }
    let refs: Vec<&Factor<T>> = factors.iter().collect();
    tabulate(&refs, f.labels(), n)
}

/// Homomorphism number of the underlying unlabeled graph.
pub fn hom<T: Scalar>(f: &LabeledGraph, h: &WeightedGraph<T>) -> T {
    hom_table(&f.forget_labels(), h).pop().expect("one entry")
}

/// `hom_φ(F, H)` where `phi[i]` is the image of label `i + 1`.
pub fn hom_phi<T: Scalar>(f: &LabeledGraph, h: &WeightedGraph<T>, phi: &[usize]) -> Result<T> {
    if phi.len() != f.k() {
        return Err(Error::Dimension(format!(
            "assignment covers {} labels but the graph has {}",
            phi.len(),
            f.k()
        )));
    }
    let n = h.node_count();
    if let Some(&bad) = phi.iter().find(|&&p| p >= n) {
        return Err(Error::Dimension(format!("node {bad} is not a node of H")));
    }
    let idx = phi.iter().fold(0, |a, &p| a * n + p);
    Ok(hom_table(f, h).swap_remove(idx))
}

/// Sum over injective maps `V(F) → V(H)` of the homomorphism weight.
pub fn inj<T: Scalar>(f: &LabeledGraph, h: &WeightedGraph<T>) -> T {
    let nf = f.node_count();
    let n = h.node_count();
    if nf > n {
        return T::zero();
    }
    let beta = h.beta();
    let edges: Vec<(usize, usize, u32)> = f.edges().collect();
    fn go<T: Scalar>(
        pos: usize,
        nf: usize,
        img: &mut Vec<usize>,
        used: &mut [bool],
        h: &WeightedGraph<T>,
        beta: &crate::linalg::Matrix<T>,
        edges: &[(usize, usize, u32)],
    ) -> T {
        if pos == nf {
            return T::one();
        }
        let mut total = T::zero();
        for i in 0..used.len() {
            if used[i] {
                continue;
            }
            img.push(i);
            let mut w = h.alpha()[i].clone();
            for &(u, v, m) in edges {
                // Edges whose later endpoint is `pos` are decided now.
                if v == pos && u <= pos {
                    w = w * beta[(img[u], i)].pow_u(m);
                }
            }
            if !w.is_zero() {
                used[i] = true;
                total = total + w * go(pos + 1, nf, img, used, h, beta, edges);
                used[i] = false;
            }
            img.pop();
        }
        total
    }
    go(0, nf, &mut Vec::new(), &mut vec![false; n], h, beta, &edges)
}

/// Homomorphism density `hom(F, H) / α_H^{|V(F)|}`.
pub fn t<T: Scalar>(f: &LabeledGraph, h: &WeightedGraph<T>) -> T {
    hom(f, h) / h.total_weight().pow_u(f.node_count() as u32)
}

/// Injective density `inj(F, H) / (|V(H)|)_{|V(F)|}` for unweighted `H`.
pub fn t0<T: Scalar>(f: &LabeledGraph, h: &WeightedGraph<T>) -> Result<T> {
    if !h.is_unweighted() {
        return Err(Error::InvalidParameter("t0 needs an unweighted target".into()));
    }
    let (nf, n) = (f.node_count(), h.node_count());
    if n < nf {
        return Err(Error::InvalidParameter(format!(
            "t0 needs at least {nf} target nodes, H has {n}"
        )));
    }
    let falling = (0..nf).fold(T::one(), |a, i| a * T::from_int((n - i) as i64));
    Ok(inj(f, h) / falling)
}

/// `hom_φ` values of a quantum graph, one per `φ ∈ V(H)^k`.
#[derive(Clone, PartialEq, Debug)]
pub struct HomProfile<T> {
    n: usize,
    k: usize,
    values: Vec<T>,
}

impl<T: Scalar> HomProfile<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Values indexed with label 1 most significant.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, phi: &[usize]) -> &T {
        &self.values[phi.iter().fold(0, |a, &p| a * self.n + p)]
    }

    /// The profile as an `n × n` matrix (arity 2 only).
    pub fn to_matrix(&self) -> Option<crate::linalg::Matrix<T>> {
        (self.k == 2)
            .then(|| crate::linalg::Matrix::from_fn(self.n, self.n, |i, j| self.values[i * self.n + j].clone()))
    }

    /// `∏_i α(φ_i)` for each `φ`, in the same order as [`Self::values`].
    pub fn weights(h: &WeightedGraph<T>, k: usize) -> Vec<T> {
        let n = h.node_count();
        (0..n.pow(k as u32))
            .map(|mut idx| {
                let mut w = T::one();
                for _ in 0..k {
                    w = w * h.alpha()[idx % n].clone();
                    idx /= n;
                }
                w
            })
            .collect()
    }
}

/// Linear extension of [`hom_table`] over the terms of `x`.
pub fn profile<T: Scalar>(x: &QuantumGraph<T>, h: &WeightedGraph<T>) -> HomProfile<T> {
    let n = h.node_count();
    let k = x.k();
    let mut values = vec![T::zero(); n.pow(k as u32)];
    for (c, g) in x.graphs() {
        for (acc, v) in values.iter_mut().zip(hom_table(&g, h)) {
            *acc = acc.clone() + c.clone() * v;
        }
    }
    HomProfile { n, k, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::oracles::brute_hom_phi;
    use crate::scalar::{int, rat, Rational};
    use proptest::prelude::*;

    type H = WeightedGraph<Rational>;

    #[test]
    fn spec_examples() {
        let k3 = H::complete(3);
        assert_eq!(hom(&LabeledGraph::complete(3), &k3), int(6));
        let k2 = H::complete(2);
        let p3 = LabeledGraph::path(3).unwrap();
        assert_eq!(hom_phi(&p3, &k2, &[0, 0]).unwrap(), int(1));
        assert_eq!(hom_phi(&p3, &k2, &[0, 1]).unwrap(), int(0));
        let edge = LabeledGraph::complete(2);
        assert_eq!(inj(&edge, &k3), int(6));
        assert_eq!(t(&edge, &k3), rat(2, 3));
        assert_eq!(t0(&edge, &k3).unwrap(), int(1));
        assert_eq!(t(&LabeledGraph::complete(1), &k3), int(1));
        assert_eq!(inj(&LabeledGraph::complete(3), &k2), int(0));
        assert!(t0(&LabeledGraph::complete(3), &k2).is_err());
    }

    #[test]
    fn labeled_edge_gives_beta() {
        let h = H::new(
            vec![rat(1, 2), int(2)],
            Matrix::from_rows(vec![vec![rat(1, 3), int(5)], vec![int(5), int(0)]]).unwrap(),
        )
        .unwrap();
        let k2 = LabeledGraph::complete_labeled(2);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(&hom_phi(&k2, &h, &[i, j]).unwrap(), &h.beta()[(i, j)]);
            }
        }
        let o2 = QuantumGraph::from_graph(&LabeledGraph::empty_labeled(2));
        assert!(profile(&o2, &h).values().iter().all(|v| *v == int(1)));
    }

    fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
        (
            1usize..6,
            0usize..3,
            proptest::collection::vec((0usize..6, 0usize..6, 1u32..3), 0..8),
        )
            .prop_map(|(n, k, edges)| {
                let k = k.min(n);
                let mut g = LabeledGraph::new(n, (0..k).rev().collect()).unwrap();
                for (u, v, m) in edges {
                    g.add_edge(u % n, v % n, m).unwrap();
                }
                g
            })
    }

    fn arb_target() -> impl Strategy<Value = H> {
        (1usize..4)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(1i64..4, n),
                    proptest::collection::vec(-2i64..3, n * n),
                )
            })
            .prop_map(|(a, b)| {
                let n = a.len();
                let beta = Matrix::from_fn(n, n, |i, j| {
                    let (i, j) = (i.min(j), i.max(j));
                    rat(b[i * n + j], 1 + (i + j) as i64)
                });
                H::new(a.into_iter().map(|x| rat(x, 2)).collect(), beta).unwrap()
            })
    }

    proptest! {
        #[test]
        fn elimination_matches_brute_force(g in arb_graph(), h in arb_target()) {
            let table = hom_table(&g, &h);
            let n = h.node_count();
            for (idx, v) in table.iter().enumerate() {
                let mut phi = vec![0; g.k()];
                let mut r = idx;
                for slot in phi.iter_mut().rev() {
                    *slot = r % n;
                    r /= n;
                }
                prop_assert_eq!(v, &brute_hom_phi(&g, &h, &phi));
            }
        }

        #[test]
        fn twin_reduction_preserves_hom(g in arb_graph(), h in arb_target()) {
            let dup = {
                // Duplicate node 0 to force a twin.
                let n = h.node_count();
                let idx = |i: usize| if i == n { 0 } else { i };
                let beta = Matrix::from_fn(n + 1, n + 1, |i, j| h.beta()[(idx(i), idx(j))].clone());
                let mut alpha = h.alpha().to_vec();
                alpha.push(rat(1, 3));
                H::new(alpha, beta).unwrap()
            };
            prop_assert_eq!(hom(&g, &dup), hom(&g, &dup.twin_reduce()));
        }

        #[test]
        fn inj_sums_to_hom_on_two_node_sources(h in arb_target()) {
            // hom(K_2) − inj(K_2) is the diagonal part Σ α_i² β_ii.
            let k2 = LabeledGraph::complete(2);
            let diag = (0..h.node_count()).fold(int(0), |a, i| {
                a + h.alpha()[i].clone() * h.alpha()[i].clone() * h.beta()[(i, i)].clone()
            });
            prop_assert_eq!(hom(&k2, &h), inj(&k2, &h) + diag);
        }
    }
}
