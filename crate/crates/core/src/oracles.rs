//! Slow reference implementations used to cross-check the fast evaluators.
//! Each one follows the defining sum directly and shares no code with the
//! evaluator it checks.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::graphs::LabeledGraph;
use crate::params::{AbelianGroup, GroupSubset, TuttePolynomial, WeightedGraph};
use crate::scalar::Scalar;

/// Proper colourings with `x` colours, by enumerating all `x^n` maps.
pub fn brute_colourings(g: &LabeledGraph, x: u32) -> u64 {
    let n = g.node_count();
    if x == 0 {
        return u64::from(n == 0);
    }
    let edges = g.edge_list();
    let mut colour = vec![0u32; n];
    let mut count = 0;
    loop {
        if edges.iter().all(|&(u, v)| colour[u] != colour[v]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            colour[i] += 1;
            if colour[i] < x {
                break;
            }
            colour[i] = 0;
            i += 1;
        }
    }
}

/// `hom_φ(F, H)` by enumerating every extension of `φ`.
pub fn brute_hom_phi<T: Scalar>(f: &LabeledGraph, h: &WeightedGraph<T>, phi: &[usize]) -> T {
    let n = h.node_count();
    let nf = f.node_count();
    let free: Vec<usize> = (0..nf).filter(|&x| !f.is_labeled(x)).collect();
    let mut psi = vec![0usize; nf];
    for (i, &x) in f.labels().iter().enumerate() {
        psi[x] = phi[i];
    }
    let total_maps = n.pow(free.len() as u32);
    let mut total = T::zero();
    for mut idx in 0..total_maps {
        for &x in &free {
            psi[x] = idx % n;
            idx /= n;
        }
        let mut w = T::one();
        for &x in &free {
            w = w * h.alpha()[psi[x]].clone();
        }
        for (u, v) in f.edge_list() {
            w = w * h.beta()[(psi[u], psi[v])].clone();
        }
        total = total + w;
    }
    total
}

/// Tutte polynomial as the sum over all edge subsets.
pub fn subset_sum_tutte(g: &LabeledGraph) -> TuttePolynomial {
    let edges = g.edge_list();
    assert!(edges.len() < 25, "subset sum over {} edges", edges.len());
    let n = g.node_count();
    let mut terms = Vec::new();
    for mask in 0u32..(1 << edges.len()) {
        let mut comp: Vec<usize> = (0..n).collect();
        let mut size = 0u32;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            size += 1;
            let (a, b) = (comp[u], comp[v]);
            if a != b {
                for c in comp.iter_mut() {
                    if *c == b {
                        *c = a;
                    }
                }
            }
        }
        let c = comp.iter().collect::<BTreeSet<_>>().len() as u32;
        terms.push(((c, size), BigInt::from(1)));
    }
    TuttePolynomial::from_coefficients(terms)
}

/// Number of `S`-flows by trying all `|S|^{|E|}` assignments.
pub fn brute_flow_count(g: &LabeledGraph, group: &AbelianGroup, s: &GroupSubset, flip: &[bool]) -> BigInt {
    let edges = g.edge_list();
    let values: Vec<usize> = s.iter().collect();
    if edges.is_empty() {
        return BigInt::from(1);
    }
    if values.is_empty() {
        return BigInt::from(0);
    }
    let mut digits = vec![0usize; edges.len()];
    let mut count = BigInt::from(0);
    loop {
        let mut net = vec![vec![0i64; group.orders().len()]; g.node_count()];
        for ((&(u, v), &d), &f) in edges.iter().zip(&digits).zip(flip) {
            let (tail, head) = if f { (v, u) } else { (u, v) };
            let x = group.to_tuple(values[d]);
            for (c, &xc) in x.iter().enumerate() {
                net[head][c] += xc as i64;
                net[tail][c] -= xc as i64;
            }
        }
        let balanced = net.iter().all(|row| {
            row.iter()
                .zip(group.orders())
                .all(|(&x, &o)| x.rem_euclid(o as i64) == 0)
        });
        if balanced {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return count;
            }
            digits[i] += 1;
            if digits[i] < values.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Orbits of the weighted-graph automorphisms on `V(H)^k`, found by
/// checking every permutation and merging tuples explicitly.
pub fn orbit_count_by_enumeration<T: Scalar>(h: &WeightedGraph<T>, k: usize) -> usize {
    let n = h.node_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut auts = Vec::new();
    loop {
        let ok = (0..n).all(|i| {
            h.alpha()[perm[i]] == h.alpha()[i] && (0..n).all(|j| h.beta()[(perm[i], perm[j])] == h.beta()[(i, j)])
        });
        if ok {
            auts.push(perm.clone());
        }
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    let size = n.pow(k as u32);
    let decode = |mut idx: usize| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        t
    };
    let mut seen = vec![false; size];
    let mut orbits = 0;
    for start in 0..size {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let t = decode(start);
        for p in &auts {
            let img = t.iter().fold(0, |a, &x| a * n + p[x]);
            seen[img] = true;
        }
    }
    orbits
}
