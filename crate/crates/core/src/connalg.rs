//! Connection matrices over finite corpora, exact rank, semidefiniteness
//! certificates, and congruence modulo a parameter.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::{canonical_form, enumerate_corpus, glue_product, Corpus, CorpusSpec, LabeledGraph};
use crate::linalg::{rank_fraction_free, Matrix};
use crate::params::{hom_table, profile, HomProfile, Parameter, WeightedGraph};
use crate::quantum::QuantumGraph;
use crate::scalar::{Rational, Scalar};

/// `f(F_i F_j)` over the members of a corpus.
#[derive(Clone)]
pub struct ConnectionMatrix<T> {
    pub corpus: Corpus,
    pub param: String,
    pub matrix: Matrix<T>,
}

impl<T: Scalar> ConnectionMatrix<T> {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

impl ConnectionMatrix<Rational> {
    pub fn rank_exact(&self) -> usize {
        rank_exact(&self.matrix)
    }
}

/// Rank by fraction-free elimination.
pub fn rank_exact(m: &Matrix<Rational>) -> usize {
    rank_fraction_free(m)
}

pub fn connection_matrix<T: Scalar>(f: &Parameter<T>, corpus: &Corpus) -> Result<ConnectionMatrix<T>> {
    let matrix = match f {
        Parameter::Hom(h) => hom_gram(h, corpus),
        _ => gram_by_evaluation(corpus, |g| f.evaluate(g))?,
    };
    Ok(ConnectionMatrix {
        corpus: corpus.clone(),
        param: f.to_string(),
        matrix,
    })
}

/// `hom(F_i F_j, H) = Σ_φ ∏ α(φ) hom_φ(F_i) hom_φ(F_j)`.
fn hom_gram<T: Scalar>(h: &WeightedGraph<T>, corpus: &Corpus) -> Matrix<T> {
    let profiles: Vec<Vec<T>> = corpus.graphs().par_iter().map(|g| hom_table(g, h)).collect();
    let w = HomProfile::weights(h, corpus.k());
    let weighted: Vec<Vec<T>> = profiles
        .iter()
        .map(|p| p.iter().zip(&w).map(|(a, b)| a.clone() * b.clone()).collect())
        .collect();
    let n = corpus.len();
    let rows: Vec<Vec<T>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    weighted[i]
                        .iter()
                        .zip(&profiles[j])
                        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).expect("square")
}

/// Gram matrix by evaluating `f` on every glued pair. Isomorphic products
/// are evaluated once.
pub fn gram_by_evaluation<T, F>(corpus: &Corpus, f: F) -> Result<Matrix<T>>
where
    T: Scalar,
    F: Fn(&LabeledGraph) -> Result<T> + Sync,
{
    let graphs = corpus.graphs();
    let n = graphs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let forms: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let g = glue_product(&graphs[i], &graphs[j])
                .expect("same arity")
                .forget_labels();
            (canonical_form(&g), g)
        })
        .collect();
    let mut unique: HashMap<_, usize> = HashMap::new();
    let mut reps: Vec<(usize, &LabeledGraph)> = Vec::new();
    let mut slot = Vec::with_capacity(pairs.len());
    for (p, (form, g)) in forms.iter().enumerate() {
        let next = reps.len();
        let s = *unique.entry(form).or_insert_with(|| {
            reps.push((p, g));
            next
        });
        slot.push(s);
    }
    let values: Vec<T> = reps
        .par_iter()
        .map(|&(p, g)| {
            f(g).map_err(|e| {
                let (i, j) = pairs[p];
                Error::Evaluation {
                    param: "connection matrix".into(),
                    graph: format!("F{i} * F{j} = {g}"),
                    reason: e.to_string(),
                }
            })
        })
        .collect::<Result<_>>()?;
    let mut m = Matrix::zeros(n, n);
    for (&(i, j), &s) in pairs.iter().zip(&slot) {
        m[(i, j)] = values[s].clone();
        m[(j, i)] = values[s].clone();
    }
    Ok(m)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PsdVerdict {
    Psd,
    NotPsd,
}

/// Outcome of symmetric pivoted elimination.
///
/// For [`PsdVerdict::Psd`], `P M Pᵀ = L D Lᵀ` where `P` lists the rows of
/// `M` in the order `perm`, `lower` is unit lower triangular and `diag` is
/// nonnegative. For [`PsdVerdict::NotPsd`], `witness` satisfies
/// `wᵀ M w < 0`.
#[derive(Clone, Debug)]
pub struct PsdCertificate<T> {
    pub verdict: PsdVerdict,
    pub perm: Vec<usize>,
    pub lower: Vec<Vec<T>>,
    pub diag: Vec<T>,
    pub witness: Option<Vec<T>>,
}

impl<T: Scalar> PsdCertificate<T> {
    pub fn is_psd(&self) -> bool {
        self.verdict == PsdVerdict::Psd
    }

    /// Re-check the certificate against `m` by exact multiplication.
    pub fn verify(&self, m: &Matrix<T>) -> bool {
        match self.verdict {
            PsdVerdict::NotPsd => self
                .witness
                .as_ref()
                .is_some_and(|w| w.len() == m.rows() && m.quadratic_form(w).is_negative()),
            PsdVerdict::Psd => {
                let n = m.rows();
                if self.perm.len() != n || self.diag.iter().any(|d| d.is_negative()) {
                    return false;
                }
                let mut sorted = self.perm.clone();
                sorted.sort_unstable();
                if sorted != (0..n).collect::<Vec<_>>() {
                    return false;
                }
                let l = &self.lower;
                for a in 0..n {
                    if !l[a][a].is_one() || l[a][a + 1..].iter().any(|x| !x.is_zero()) {
                        return false;
                    }
                }
                (0..n).all(|a| {
                    (0..=a).all(|b| {
                        let ldl = (0..=b).fold(T::zero(), |acc, c| {
                            acc + l[a][c].clone() * self.diag[c].clone() * l[b][c].clone()
                        });
                        ldl == m[(self.perm[a], self.perm[b])]
                    })
                })
            }
        }
    }
}

/// Semidefiniteness by symmetric elimination with diagonal pivoting.
pub fn psd_certify<T: Scalar>(m: &Matrix<T>) -> Result<PsdCertificate<T>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix is not square",
            m.rows(),
            m.cols()
        )));
    }
    if let Some((i, j)) = m.first_asymmetry() {
        return Err(Error::NotSymmetric(i, j));
    }
    let n = m.rows();
    let mut s = m.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    // (pivot, multipliers l_j = S_pj / S_pp for the rows remaining after it)
    let mut steps: Vec<(usize, Vec<(usize, T)>)> = Vec::new();
    let mut diag = Vec::new();

    let witness_from = |steps: &[(usize, Vec<(usize, T)>)], y: Vec<(usize, T)>| {
        let mut x = vec![T::zero(); n];
        for (i, v) in y {
            x[i] = v;
        }
        for (p, mult) in steps.iter().rev() {
            let val = mult
                .iter()
                .fold(T::zero(), |acc, (j, l)| acc - l.clone() * x[*j].clone());
            x[*p] = val;
        }
        x
    };

    loop {
        if let Some(&i) = remaining
            .iter()
            .find(|&&i| s[(i, i)].is_negative() && !s[(i, i)].is_negligible())
        {
            let w = witness_from(&steps, vec![(i, T::one())]);
            return Ok(not_psd(w));
        }
        // A zero diagonal entry with a nonzero entry in its row.
        let zero_row = remaining.iter().find_map(|&i| {
            if !s[(i, i)].is_negligible() {
                return None;
            }
            remaining
                .iter()
                .find(|&&j| j != i && !s[(i, j)].is_negligible())
                .map(|&j| (i, j))
        });
        if let Some((i, j)) = zero_row {
            let c = if s[(j, j)].is_negligible() {
                s[(i, j)].clone()
            } else {
                s[(i, j)].clone() / s[(j, j)].clone()
            };
            let w = witness_from(&steps, vec![(i, T::one()), (j, -c)]);
            return Ok(not_psd(w));
        }
        let Some(pos) = remaining.iter().position(|&i| !s[(i, i)].is_negligible()) else {
            break;
        };
        let p = remaining.remove(pos);
        let piv = s[(p, p)].clone();
        let mult: Vec<(usize, T)> = remaining
            .iter()
            .map(|&j| (j, s[(p, j)].clone() / piv.clone()))
            .collect();
        for &(i, ref li) in &mult {
            if li.is_zero() {
                continue;
            }
            for &(j, _) in &mult {
                let upd = s[(i, j)].clone() - li.clone() * s[(p, j)].clone();
                s[(i, j)] = upd;
            }
        }
        diag.push(piv);
        steps.push((p, mult));
    }

    // Everything left is zero.
    let mut perm: Vec<usize> = steps.iter().map(|(p, _)| *p).collect();
    perm.extend(&remaining);
    diag.extend(remaining.iter().map(|_| T::zero()));
    let mut pos = vec![0; n];
    for (a, &i) in perm.iter().enumerate() {
        pos[i] = a;
    }
    let mut lower = vec![vec![T::zero(); n]; n];
    for (a, row) in lower.iter_mut().enumerate() {
        row[a] = T::one();
    }
    for (c, (_, mult)) in steps.iter().enumerate() {
        for (j, l) in mult {
            lower[pos[*j]][c] = l.clone();
        }
    }
    Ok(PsdCertificate {
        verdict: PsdVerdict::Psd,
        perm,
        lower,
        diag,
        witness: None,
    })
}

fn not_psd<T>(w: Vec<T>) -> PsdCertificate<T> {
    PsdCertificate {
        verdict: PsdVerdict::NotPsd,
        perm: Vec::new(),
        lower: Vec::new(),
        diag: Vec::new(),
        witness: Some(w),
    }
}

/// If the connection matrix of `f` on `corpus` is not semidefinite, the
/// quantum graph `w = Σ w_i F_i` with `f(w²) < 0`.
pub fn find_negative_witness<T: Scalar>(f: &Parameter<T>, corpus: &Corpus) -> Result<Option<QuantumGraph<T>>> {
    let cm = connection_matrix(f, corpus)?;
    let cert = psd_certify(&cm.matrix)?;
    Ok(cert.witness.map(|w| witness_graph(corpus, &w)))
}

/// `Σ w_i F_i` over the corpus members.
pub fn witness_graph<T: Scalar>(corpus: &Corpus, w: &[T]) -> QuantumGraph<T> {
    QuantumGraph::from_terms(corpus.k(), w.iter().cloned().zip(corpus.graphs())).expect("corpus arity")
}

/// Verdict of a corpus-relative congruence test.
#[derive(Clone, Debug, PartialEq)]
pub enum Congruence<T> {
    /// `f((x − y) z) ≠ 0` for this corpus member `z`; conclusive.
    Refuted { witness: LabeledGraph, value: T },
    /// No corpus member separates `x` and `y`; not a proof of congruence.
    ConsistentOnCorpus,
}

impl<T> Congruence<T> {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Congruence::Refuted { .. })
    }
}

/// Test `f((x − y) z) = 0` for every `z` in the corpus; the first separating
/// member in corpus order is reported.
pub fn congruent_corpus<T: Scalar>(
    x: &QuantumGraph<T>,
    y: &QuantumGraph<T>,
    f: &Parameter<T>,
    corpus: &Corpus,
) -> Result<Congruence<T>> {
    let d = x.sub(y)?;
    if d.is_zero() {
        return Ok(Congruence::ConsistentOnCorpus);
    }
    if d.k() != corpus.k() {
        return Err(Error::ArityMismatch {
            left: d.k(),
            right: corpus.k(),
        });
    }
    let values: Vec<T> = corpus
        .graphs()
        .par_iter()
        .map(|z| f.evaluate_quantum(&d.product(&QuantumGraph::from_graph(z))?))
        .collect::<Result<_>>()?;
    Ok(values
        .into_iter()
        .zip(corpus.graphs())
        .find(|(v, _)| !v.is_negligible())
        .map_or(Congruence::ConsistentOnCorpus, |(value, z)| Congruence::Refuted {
            witness: z.clone(),
            value,
        }))
}

/// Exact congruence modulo `hom(., H)`: equal `hom_φ` profiles.
pub fn congruent_hom_exact<T: Scalar>(x: &QuantumGraph<T>, y: &QuantumGraph<T>, h: &WeightedGraph<T>) -> Result<bool> {
    let d = x.sub(y)?;
    Ok(profile(&d, h).values().iter().all(|v| v.is_negligible()))
}

/// Ranks observed while growing the corpus.
#[derive(Clone, Debug, PartialEq)]
pub struct Saturation {
    /// `(max_nodes, rank)` for each size tried.
    pub ranks: Vec<(usize, usize)>,
    /// `true` when the rank repeated at two consecutive sizes, `false` when
    /// the node cap stopped the loop first.
    pub stabilized: bool,
}

impl Saturation {
    pub fn rank(&self) -> usize {
        self.ranks.last().map_or(0, |r| r.1)
    }
}

/// Grow `max_nodes` from `start` until the rank repeats at two consecutive
/// sizes or `cap` is reached.
pub fn saturate_rank(
    f: &Parameter<Rational>,
    spec: impl Fn(usize) -> CorpusSpec,
    start: usize,
    cap: usize,
) -> Result<Saturation> {
    let mut ranks: Vec<(usize, usize)> = Vec::new();
    for nodes in start..=cap {
        let corpus = enumerate_corpus(&spec(nodes))?;
        let r = connection_matrix(f, &corpus)?.rank_exact();
        log::debug!("{f}: max_nodes={nodes} corpus={} rank={r}", corpus.len());
        let repeated = ranks.last().is_some_and(|&(_, prev)| prev == r);
        ranks.push((nodes, r));
        if repeated {
            return Ok(Saturation {
                ranks,
                stabilized: true,
            });
        }
    }
    Ok(Saturation {
        ranks,
        stabilized: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    type M = Matrix<Rational>;

    fn q(rows: &[&[i64]]) -> M {
        M::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn psd_examples() {
        let c = psd_certify(&q(&[&[2, 1], &[1, 2]])).unwrap();
        assert!(c.is_psd() && c.verify(&q(&[&[2, 1], &[1, 2]])));
        let m = q(&[&[1, 2], &[2, 1]]);
        let c = psd_certify(&m).unwrap();
        assert_eq!(c.verdict, PsdVerdict::NotPsd);
        assert!(c.verify(&m));
        let w = c.witness.unwrap();
        assert_eq!(w, vec![int(-2), int(1)]);
        assert_eq!(m.quadratic_form(&w), int(-3));
        assert_eq!(m.quadratic_form(&[int(1), int(-1)]), int(-2));
        let z = M::zeros(3, 3);
        assert!(psd_certify(&z).unwrap().verify(&z));
        assert!(psd_certify(&q(&[&[1, 2], &[3, 1]])).is_err());
    }

    #[test]
    fn zero_diagonal_with_nonzero_row() {
        let m = q(&[&[1, 0, 0], &[0, 0, 3], &[0, 3, 5]]);
        let c = psd_certify(&m).unwrap();
        assert!(!c.is_psd() && c.verify(&m));
        let m = q(&[&[0, 1], &[1, 0]]);
        assert!(psd_certify(&m).unwrap().verify(&m));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_exact(&M::identity(3)), 3);
        assert_eq!(rank_exact(&M::ones(4, 4)), 1);
        let a = M::from_rows(vec![
            vec![int(1), rat(1, 2), int(0), int(3)],
            vec![int(2), int(-1), rat(5, 3), int(0)],
        ])
        .unwrap();
        let ata = a.transpose().mul(&a);
        assert_eq!(rank_exact(&ata), 2);
        assert!(psd_certify(&ata).unwrap().verify(&ata));
    }

    #[test]
    fn small_connection_matrices() {
        let o2 = LabeledGraph::empty_labeled(2);
        let k2 = LabeledGraph::complete_labeled(2);
        let corpus = Corpus::from_graphs(2, [o2.clone(), k2.clone()]).unwrap();
        let i_o2 = corpus.position(&o2).unwrap();
        let i_k2 = corpus.position(&k2).unwrap();
        let perf = connection_matrix(&Parameter::<Rational>::Perf, &corpus).unwrap().matrix;
        assert_eq!(perf[(i_o2, i_o2)], int(0));
        assert_eq!(perf[(i_o2, i_k2)], int(1));
        assert_eq!(perf[(i_k2, i_k2)], int(2));
        let expt = connection_matrix(&Parameter::<Rational>::Expt, &corpus).unwrap().matrix;
        assert_eq!(expt[(i_k2, i_k2)], rat(1, 2));
        let one = WeightedGraph::new(vec![int(1)], M::ones(1, 1)).unwrap();
        let ones = connection_matrix(&Parameter::Hom(one), &corpus).unwrap().matrix;
        assert_eq!(ones, M::ones(2, 2));
    }

    #[test]
    fn hom_fast_path_matches_evaluation() {
        let corpus = enumerate_corpus(&CorpusSpec::new(2, 4)).unwrap();
        let h = WeightedGraph::new(
            vec![rat(1, 2), int(2), int(1)],
            q(&[&[1, 2, 0], &[2, 0, 1], &[0, 1, -1]]),
        )
        .unwrap();
        let f = Parameter::Hom(h);
        let fast = connection_matrix(&f, &corpus).unwrap().matrix;
        let slow = gram_by_evaluation(&corpus, |g| f.evaluate(g)).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn hom_congruence() {
        let k2 = QuantumGraph::from_graph(&LabeledGraph::complete_labeled(2));
        let p3 = QuantumGraph::from_graph(&LabeledGraph::path(3).unwrap());
        let p4 = QuantumGraph::from_graph(&LabeledGraph::path(4).unwrap());
        let h = WeightedGraph::<Rational>::complete(2);
        assert!(!congruent_hom_exact(&k2, &p3, &h).unwrap());
        assert!(congruent_hom_exact(&k2, &p4, &h).unwrap());
        assert!(congruent_hom_exact(&k2, &k2.add(&QuantumGraph::zero(2)).unwrap(), &h).unwrap());
        let corpus = enumerate_corpus(&CorpusSpec::new(2, 4)).unwrap();
        let f = Parameter::Hom(h);
        assert_eq!(
            congruent_corpus(&k2, &p4, &f, &corpus).unwrap(),
            Congruence::ConsistentOnCorpus
        );
        assert!(congruent_corpus(&k2, &p3, &f, &corpus).unwrap().is_refuted());
    }
}
