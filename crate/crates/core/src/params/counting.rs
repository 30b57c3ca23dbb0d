use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graphs::LabeledGraph;
use crate::scalar::Scalar;

/// Number of perfect matchings; a class of `m` parallel edges offers `m`
/// choices and loops never match.
pub fn perf(g: &LabeledGraph) -> BigInt {
    let n = g.node_count();
    assert!(n <= 64, "perf supports at most 64 nodes");
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let mut adj = vec![vec![0u32; n]; n];
    for (u, v, m) in g.edges() {
        if u != v {
            adj[u][v] = m;
            adj[v][u] = m;
        }
    }
    fn go(left: u64, adj: &[Vec<u32>], memo: &mut HashMap<u64, BigInt>) -> BigInt {
        if left == 0 {
            return BigInt::one();
        }
        if let Some(c) = memo.get(&left) {
            return c.clone();
        }
        let v = left.trailing_zeros() as usize;
        let rest = left & !(1 << v);
        let mut total = BigInt::zero();
        let mut others = rest;
        while others != 0 {
            let u = others.trailing_zeros() as usize;
            others &= others - 1;
            if adj[v][u] > 0 {
                total += BigInt::from(adj[v][u]) * go(rest & !(1 << u), adj, memo);
            }
        }
        memo.insert(left, total.clone());
        total
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    go(all, &adj, &mut HashMap::new())
}

/// `2^{-e}` with `e` the number of adjacent node pairs (loops and parallel
/// edges ignored).
pub fn expt<T: Scalar>(g: &LabeledGraph) -> T {
    let e = g.edges().filter(|&(u, v, _)| u != v).count();
    T::one() / T::from_int(2).pow_u(e as u32)
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of eulerian orientations. Each loop can be oriented either way
/// without affecting balance.
pub fn eul(g: &LabeledGraph) -> BigInt {
    let n = g.node_count();
    if (0..n).any(|x| g.degree(x) % 2 == 1) {
        return BigInt::zero();
    }
    let loops = g.loop_count() as u32;
    let classes: Vec<(usize, usize, u32)> = g.edges().filter(|&(u, v, _)| u != v).collect();
    let mut remaining = vec![0i64; n];
    for &(u, v, m) in &classes {
        remaining[u] += m as i64;
        remaining[v] += m as i64;
    }
    fn go(i: usize, classes: &[(usize, usize, u32)], bal: &mut [i64], remaining: &mut [i64]) -> BigInt {
        if i == classes.len() {
            return if bal.iter().all(|&b| b == 0) {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        let (u, v, m) = classes[i];
        remaining[u] -= m as i64;
        remaining[v] -= m as i64;
        let mut total = BigInt::zero();
        for j in 0..=m {
            // `j` copies oriented u → v.
            let d = 2 * j as i64 - m as i64;
            bal[u] += d;
            bal[v] -= d;
            if bal[u].abs() <= remaining[u] && bal[v].abs() <= remaining[v] {
                let sub = go(i + 1, classes, bal, remaining);
                if !sub.is_zero() {
                    total += binomial(m, j) * sub;
                }
            }
            bal[u] -= d;
            bal[v] += d;
        }
        remaining[u] += m as i64;
        remaining[v] += m as i64;
        total
    }
    go(0, &classes, &mut vec![0; n], &mut remaining) * (BigInt::one() << loops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn matchings() {
        assert_eq!(perf(&LabeledGraph::complete(2)), BigInt::from(1));
        assert_eq!(perf(&LabeledGraph::cycle(4)), BigInt::from(2));
        assert_eq!(perf(&LabeledGraph::complete(3)), BigInt::from(0));
        assert_eq!(perf(&LabeledGraph::complete(6)), BigInt::from(15));
        let double = LabeledGraph::unlabeled(2, &[(0, 1), (0, 1), (0, 0)]).unwrap();
        assert_eq!(perf(&double), BigInt::from(2));
        assert_eq!(perf(&LabeledGraph::unlabeled(0, &[]).unwrap()), BigInt::from(1));
    }

    #[test]
    fn expt_values() {
        assert_eq!(expt::<Rational>(&LabeledGraph::complete(3)), rat(1, 8));
        let g = LabeledGraph::unlabeled(2, &[(0, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!(expt::<Rational>(&g), rat(1, 2));
    }

    #[test]
    fn eulerian_orientations() {
        assert_eq!(eul(&LabeledGraph::cycle(3)), BigInt::from(2));
        assert_eq!(eul(&LabeledGraph::complete(2)), BigInt::from(0));
        assert_eq!(eul(&LabeledGraph::complete(5)), BigInt::from(24));
        let double = LabeledGraph::unlabeled(2, &[(0, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!(eul(&double), BigInt::from(4));
    }

    #[test]
    fn eul_matches_brute_force_on_small_multigraphs() {
        let graphs = [
            LabeledGraph::unlabeled(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]).unwrap(),
            LabeledGraph::unlabeled(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 2)]).unwrap(),
            LabeledGraph::complete(4).disjoint_union(&LabeledGraph::cycle(3)),
        ];
        for g in &graphs {
            let edges = g.edge_list();
            let mut brute = 0u64;
            for mask in 0u32..(1 << edges.len()) {
                let mut bal = vec![0i64; g.node_count()];
                for (i, &(u, v)) in edges.iter().enumerate() {
                    let (a, b) = if mask >> i & 1 == 1 { (v, u) } else { (u, v) };
                    bal[a] += 1;
                    bal[b] -= 1;
                }
                if bal.iter().all(|&b| b == 0) {
                    brute += 1;
                }
            }
            assert_eq!(eul(g), BigInt::from(brute), "{g}");
        }
    }
}
