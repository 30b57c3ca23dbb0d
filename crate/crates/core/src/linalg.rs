//! Dense matrices over a [`Scalar`] field and the exact elimination routines
//! built on them: rank, kernels, linear solves and incremental span tests.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::one(); rows * cols],
        }
    }

    pub fn diagonal(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Entrywise (Schur) product.
    pub fn schur(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
        }
    }

    /// `self · diag(d) · other`.
    pub fn mul_diag_mul(&self, d: &[T], other: &Self) -> Self {
        assert_eq!(self.cols, d.len());
        let scaled = Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * d[j].clone());
        scaled.mul(other)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `vᵀ · self · v`.
    pub fn quadratic_form(&self, v: &[T]) -> T {
        dot(v, &self.mul_vec(v))
    }

    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        Self::from_fn(perm.len(), perm.len(), |i, j| self[(perm[i], perm[j])].clone())
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        self.permute_symmetric(idx)
    }

    /// Rank by Gaussian elimination over the field.
    pub fn rank(&self) -> usize {
        row_echelon(self.to_rows(), self.cols).pivots.len()
    }

    /// Basis of the right kernel `{x : self·x = 0}`, one vector per free
    /// column with that column set to 1.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let ech = row_echelon(self.to_rows(), self.cols);
        let rref = ech.into_reduced();
        let pivot_cols: Vec<usize> = rref.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut x = vec![T::zero(); self.cols];
            x[free] = T::one();
            for &(r, c) in &rref.pivots {
                x[c] = -rref.rows[r][free].clone();
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of `self·x = b` (free variables set to zero), or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let aug: Vec<Vec<T>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let rref = row_echelon(aug, self.cols).into_reduced();
        for r in rref.pivots.len()..rref.rows.len() {
            if !rref.rows[r][self.cols].is_negligible() {
                return None;
            }
        }
        let mut x = vec![T::zero(); self.cols];
        for &(r, c) in &rref.pivots {
            x[c] = rref.rows[r][self.cols].clone();
        }
        Some(x)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

struct Echelon<T> {
    rows: Vec<Vec<T>>,
    /// (row index, pivot column), rows 0..pivots.len() are the nonzero ones.
    pivots: Vec<(usize, usize)>,
}

impl<T: Scalar> Echelon<T> {
    fn into_reduced(mut self) -> Self {
        for &(r, c) in self.pivots.iter().rev() {
            let p = self.rows[r][c].clone();
            if !p.is_one() {
                for x in self.rows[r].iter_mut() {
                    *x = x.clone() / p.clone();
                }
            }
            for above in 0..r {
                let f = self.rows[above][c].clone();
                if !f.is_zero() {
                    let (head, tail) = self.rows.split_at_mut(r);
                    axpy(&mut head[above], &f, &tail[0]);
                }
            }
        }
        self
    }
}

/// `dst -= f · src`.
fn axpy<T: Scalar>(dst: &mut [T], f: &T, src: &[T]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.clone() - f.clone() * s.clone();
        }
    }
}

/// Forward elimination restricted to the first `pivot_cols` columns.
fn row_echelon<T: Scalar>(mut rows: Vec<Vec<T>>, pivot_cols: usize) -> Echelon<T> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..pivot_cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_negligible()) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next][c].clone();
        for r in next + 1..rows.len() {
            if rows[r][c].is_negligible() {
                continue;
            }
            let f = rows[r][c].clone() / pivot.clone();
            let (head, tail) = rows.split_at_mut(r);
            axpy(&mut tail[0], &f, &head[next]);
            tail[0][c] = T::zero();
        }
        pivots.push((next, c));
        next += 1;
    }
    Echelon { rows, pivots }
}

/// Rank of a rational matrix by fraction-free (Bareiss) elimination on the
/// integer matrix obtained by clearing each row's denominators.
pub fn rank_fraction_free(m: &Matrix<Rational>) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let cols = m.cols();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail {
            let lead = row[c].clone();
            for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                *x = (&pivot * &*x - &lead * p) / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Incrementally maintained echelon basis that remembers how each reduced
/// row is expressed in terms of the vectors inserted so far.
#[derive(Clone, Debug)]
pub struct SpanBasis<T> {
    dim: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<T>>,
    inserted: usize,
}

impl<T: Scalar> SpanBasis<T> {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
        }
    }

    /// Number of independent vectors accepted.
    pub fn len(&self) -> usize {
        self.inserted
    }

    pub fn is_empty(&self) -> bool {
        self.inserted == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduce `v`; returns the residual and the accumulated coefficients `c`
    /// with `v = residual - Σ c_j · basis_j`.
    fn reduce(&self, v: &[T]) -> (Vec<T>, Vec<T>) {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        let mut c = vec![T::zero(); self.inserted];
        for ((row, &p), combo) in self.rows.iter().zip(&self.pivots).zip(&self.combos) {
            if w[p].is_negligible() {
                continue;
            }
            let f = w[p].clone();
            axpy(&mut w, &f, row);
            w[p] = T::zero();
            for (cj, bj) in c.iter_mut().zip(combo) {
                if !bj.is_zero() {
                    *cj = cj.clone() - f.clone() * bj.clone();
                }
            }
        }
        (w, c)
    }

    /// Coefficients of `v` in terms of the inserted basis vectors, if `v` is
    /// in their span.
    pub fn express(&self, v: &[T]) -> Option<Vec<T>> {
        let (w, c) = self.reduce(v);
        w.iter()
            .all(Scalar::is_negligible)
            .then(|| c.into_iter().map(|x| -x).collect())
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.express(v).is_some()
    }

    /// Insert `v`. Returns `Err(coefficients)` when `v` already lies in the
    /// span, `Ok(index)` with its basis index otherwise.
    pub fn insert(&mut self, v: &[T]) -> std::result::Result<usize, Vec<T>> {
        let (w, mut c) = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_negligible()) else {
            return Err(c.into_iter().map(|x| -x).collect());
        };
        let lead = w[p].clone();
        let row: Vec<T> = w.into_iter().map(|x| x / lead.clone()).collect();
        for combo in &mut self.combos {
            combo.push(T::zero());
        }
        c.push(T::one());
        let combo = c.into_iter().map(|x| x / lead.clone()).collect();
        self.rows.push(row);
        self.pivots.push(p);
        self.combos.push(combo);
        self.inserted += 1;
        Ok(self.inserted - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
        assert_eq!(Matrix::<Rational>::ones(5, 5).rank(), 1);
        assert_eq!(Matrix::<Rational>::zeros(2, 3).rank(), 0);
        // AᵀA with A a 2×4 rational matrix of full row rank.
        let a = Matrix::from_rows(vec![
            vec![rat(1, 2), int(0), int(3), rat(-1, 3)],
            vec![int(2), int(1), rat(1, 5), int(0)],
        ])
        .unwrap();
        let ata = a.transpose().mul(&a);
        assert_eq!(ata.rank(), 2);
        assert_eq!(rank_fraction_free(&ata), 2);
    }

    #[test]
    fn kernel_and_solve() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        let x = m.solve(&[int(6), int(12)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![int(6), int(12)]);
        assert!(m.solve(&[int(1), int(1)]).is_none());
    }

    #[test]
    fn span_basis_expresses_members() {
        let mut s = SpanBasis::<Rational>::new(3);
        assert_eq!(s.insert(&[int(1), int(1), int(0)]), Ok(0));
        assert_eq!(s.insert(&[int(0), int(1), int(1)]), Ok(1));
        let c = s.insert(&[int(2), int(5), int(3)]).unwrap_err();
        assert_eq!(c, vec![int(2), int(3)]);
        assert!(!s.contains(&[int(0), int(0), int(1)]));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c)
                .prop_map(move |v| Matrix::from_fn(r, c, |i, j| int(v[i * c + j])))
        })
    }

    proptest! {
        #[test]
        fn fraction_free_rank_matches_field_rank(m in small_matrix(), s in 1i64..5) {
            let scaled = m.scale(&rat(1, s));
            prop_assert_eq!(rank_fraction_free(&scaled), m.rank());
            prop_assert_eq!(m.transpose().rank(), m.rank());
        }

        #[test]
        fn rank_plus_nullity(m in small_matrix()) {
            prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
        }
    }
}
