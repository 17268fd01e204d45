//! Dense exact linear algebra over [`Scalar`] fields.
//!
//! Row reduction uses a fixed deterministic pivoting rule (first nonzero
//! entry in column order), so kernel and solution bases are reproducible
//! across runs. Everything downstream depends on that determinism.

use crate::error::{CoreError, Result};
use crate::field::{FieldSpec, Scalar};

/// A dense matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, field, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, field, entries }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc.add(&a.mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Row echelon reduction in place; returns pivot columns.
    /// Pivot rule: first nonzero entry scanning columns left to right.
    fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.entries.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = self.at(row, col).inv().expect("pivot nonzero");
            for j in col..self.cols {
                let v = self.at(row, j).mul(&inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for j in col..self.cols {
                    let v = self.at(r, j).sub(&factor.mul(self.at(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        (m, pivots)
    }

    /// Exact rank over the field.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Some `x` with `self · x = b`, or `None` when the system is
    /// inconsistent. Deterministic: free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(CoreError::Dimension(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        let aug_cols = self.cols + b.cols;
        let mut aug = Matrix::zero(self.field, self.rows, aug_cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            for j in 0..b.cols {
                aug.set(i, self.cols + j, b.at(i, j).clone());
            }
        }
        let pivots = aug.row_reduce();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zero(self.field, self.cols, b.cols);
        for (row, &col) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(col, j, aug.at(row, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Basis of the null space; one vector per non-pivot column,
    /// size = cols − rank.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = rref.at(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Indices of the columns forming a basis of the column space.
    pub fn image_pivot_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return self.field.zero();
            };
            if p != col {
                for j in 0..n {
                    m.entries.swap(p * n + j, col * n + j);
                }
                det = det.neg();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().unwrap();
            for r in (col + 1)..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).mul(&inv);
                for j in col..n {
                    let v = m.at(r, j).sub(&factor.mul(m.at(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Square-matrix inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        match self.solve(&id) {
            Ok(Some(x)) => {
                if self.mul(&x) == id {
                    Some(x)
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

/// Repeated exact solving against a fixed matrix: the row reduction is
/// performed once, each `solve` is then a transform application.
#[derive(Debug, Clone)]
pub struct Solver {
    field: FieldSpec,
    cols: usize,
    pivots: Vec<usize>,
    /// T with T·A in reduced row echelon form.
    transform: Matrix,
}

impl Solver {
    pub fn new(a: &Matrix) -> Solver {
        let augmented = a.hstack(&Matrix::identity(a.field, a.rows));
        let (rref, pivots_aug) = augmented.rref();
        let pivots: Vec<usize> = pivots_aug.into_iter().filter(|&c| c < a.cols).collect();
        let transform = Matrix::from_fn(a.field, a.rows, a.rows, |i, j| {
            rref.at(i, a.cols + j).clone()
        });
        Solver { field: a.field, cols: a.cols, pivots, transform }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Some x with A·x = b (free variables zero), or None if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let tb = self.transform.apply(b);
        for r in self.pivots.len()..tb.len() {
            if !tb[r].is_zero() {
                return None;
            }
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &piv) in self.pivots.iter().enumerate() {
            x[piv] = tb[row].clone();
        }
        Some(x)
    }
}

/// Incremental echelon basis: O(dim²) per inserted vector.
#[derive(Debug, Clone)]
pub struct EchelonSieve {
    dim: usize,
    pivots: BTreeMap<usize, Vec<Scalar>>,
}

use std::collections::BTreeMap;

impl EchelonSieve {
    pub fn new(dim: usize) -> Self {
        EchelonSieve { dim, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Insert a vector; returns true when it enlarges the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (&piv, row) in &self.pivots {
            if !v[piv].is_zero() {
                let c = v[piv].clone();
                for k in piv..self.dim {
                    if !row[k].is_zero() {
                        v[k] = v[k].sub(&c.mul(&row[k]));
                    }
                }
            }
        }
        let Some(lead) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[lead].inv().unwrap();
        for c in v.iter_mut() {
            *c = c.mul(&inv);
        }
        self.pivots.insert(lead, v);
        true
    }

    /// Does the span contain v?
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut probe = self.clone();
        !probe.insert(v)
    }
}

/// Stack row vectors into a matrix (rows may be empty: 0×dim).
pub fn rows_matrix(field: FieldSpec, dim: usize, vectors: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_fn(field, vectors.len(), dim, |i, j| vectors[i][j].clone())
}

/// dim(ambient / span(sub)).
pub fn quotient_dims(field: FieldSpec, sub: &[Vec<Scalar>], ambient_dim: usize) -> usize {
    for v in sub {
        assert_eq!(v.len(), ambient_dim, "subspace vector of wrong length");
    }
    ambient_dim - rows_matrix(field, ambient_dim, sub).rank()
}

/// Basis of span(vectors), chosen deterministically among the inputs.
pub fn span_basis(field: FieldSpec, dim: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let m = rows_matrix(field, dim, vectors).transpose();
    m.image_pivot_columns().into_iter().map(|c| vectors[c].clone()).collect()
}

/// Coordinates of `v` in the span of `basis` (columns), if it lies there.
pub fn coords_in_span(field: FieldSpec, basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    let dim = v.len();
    let m = rows_matrix(field, dim, basis).transpose();
    let b = Matrix::from_fn(field, dim, 1, |i, _| v[i].clone());
    m.solve(&b).ok().flatten().map(|x| x.col(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn mat(rows: Vec<Vec<i64>>) -> Matrix {
        let f = q();
        Matrix::from_rows(f, rows.into_iter().map(|r| r.into_iter().map(|x| f.from_i64(x)).collect()).collect())
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(Matrix::identity(q(), 2).rank(), 2);
        assert_eq!(Matrix::zero(q(), 3, 4).rank(), 0);
        assert_eq!(mat(vec![vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(q(), 3);
        let b = mat(vec![vec![4], vec![5], vec![6]]);
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let a = mat(vec![vec![1], vec![0]]);
        let b = mat(vec![vec![0], vec![1]]);
        assert!(a.solve(&b).unwrap().is_none());

        let a = mat(vec![vec![2]]);
        let b = mat(vec![vec![1]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x.at(0, 0), &q().from_ratio(1, 2).unwrap());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = mat(vec![vec![1, 0]]);
        let b = mat(vec![vec![1], vec![2]]);
        assert!(a.solve(&b).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 4).kernel_basis().is_empty());
        assert_eq!(Matrix::zero(q(), 2, 3).kernel_basis().len(), 3);
        let k = mat(vec![vec![1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], k[0][1].neg());
    }

    #[test]
    fn quotient_dims_examples() {
        assert_eq!(quotient_dims(q(), &[], 5), 5);
        let full: Vec<Vec<Scalar>> = (0..3)
            .map(|i| (0..3).map(|j| q().from_i64((i == j) as i64)).collect())
            .collect();
        assert_eq!(quotient_dims(q(), &full, 3), 0);
        assert_eq!(quotient_dims(q(), &[vec![q().from_i64(2), q().from_i64(3)]], 2), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_equals_rank_of_transpose(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = Matrix::from_fn(q(), rows, cols, |_, _| q().from_i64(rng.gen_range(-3..=3)));
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_dim_plus_rank_is_cols(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = Matrix::from_fn(q(), rows, cols, |_, _| q().from_i64(rng.gen_range(-3..=3)));
            prop_assert_eq!(m.kernel_basis().len() + m.rank(), cols);
        }

        #[test]
        fn solve_solutions_verify_exactly(n in 1usize..4, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = Matrix::from_fn(q(), n, n, |_, _| q().from_i64(rng.gen_range(-3..=3)));
            let b = Matrix::from_fn(q(), n, 1, |_, _| q().from_i64(rng.gen_range(-3..=3)));
            if let Some(x) = a.solve(&b).unwrap() {
                prop_assert_eq!(a.mul(&x), b);
            }
        }
    }
}
