use super::WeightedGraph;
use crate::scalar::Scalar;

/// All permutations `p` of `V(H)` with `α(p(i)) = α(i)` and
/// `β(p(i), p(j)) = β(i, j)`.
pub fn automorphisms<T: Scalar>(h: &WeightedGraph<T>) -> Vec<Vec<usize>> {
    let n = h.node_count();
    let (alpha, beta) = (h.alpha(), h.beta());
    let mut out = Vec::new();
    let mut img: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go<T: Scalar>(
        img: &mut Vec<usize>,
        used: &mut [bool],
        alpha: &[T],
        beta: &crate::linalg::Matrix<T>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = img.len();
        if i == used.len() {
            out.push(img.clone());
            return;
        }
        for c in 0..used.len() {
            if used[c] || alpha[c] != alpha[i] || beta[(c, c)] != beta[(i, i)] {
                continue;
            }
            if (0..i).all(|j| beta[(c, img[j])] == beta[(i, j)]) {
                used[c] = true;
                img.push(c);
                go(img, used, alpha, beta, out);
                img.pop();
                used[c] = false;
            }
        }
    }
    go(&mut img, &mut used, alpha, beta, &mut out);
    out
}

/// Number of orbits of `Aut(H)` acting diagonally on `V(H)^k` (Burnside).
pub fn automorphism_orbit_count<T: Scalar>(h: &WeightedGraph<T>, k: usize) -> u64 {
    let auts = automorphisms(h);
    let total: u64 = auts
        .iter()
        .map(|p| {
            let fixed = p.iter().enumerate().filter(|&(i, &x)| i == x).count() as u64;
            fixed.pow(k as u32)
        })
        .sum();
    total / auts.len() as u64
}
