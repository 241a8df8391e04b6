//! Dense matrices over ℝ or ℂ.
//!
//! A matrix has `n` rows and `m` columns and acts on `m`-vectors; this is the
//! convention used throughout the crate for dimension-dependent constants.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::index::ExtIndex;
use crate::vector::{norm_of, Field, Vector};
use crate::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense matrix tagged with its field.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
    field: Field,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>, field: Field) -> Result<Self, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if field == Field::Real && data.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidInput(
                "real matrix with a nonzero imaginary part".into(),
            ));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Matrix { rows, cols, data, field })
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        assert!(rows > 0 && cols > 0);
        Matrix { rows, cols, data: vec![ZERO; rows * cols], field }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut a = Matrix::zeros(n, n, field);
        for i in 0..n {
            a[(i, i)] = ONE;
        }
        a
    }

    /// Real matrix from rows of floats.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, Error> {
        Matrix::from_rows_with(rows, Field::Real, |&x| Complex64::new(x, 0.0))
    }

    /// Complex matrix from rows of complex numbers.
    pub fn from_complex_rows(rows: &[Vec<Complex64>]) -> Result<Self, Error> {
        Matrix::from_rows_with(rows, Field::Complex, |&z| z)
    }

    fn from_rows_with<T>(
        rows: &[Vec<T>],
        field: Field,
        conv: impl Fn(&T) -> Complex64,
    ) -> Result<Self, Error> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter().map(&conv)).collect();
        Matrix::new(n, m, data, field)
    }

    /// Diagonal `n×n` matrix.
    pub fn diagonal(diag: &[Complex64], field: Field) -> Result<Self, Error> {
        let n = diag.len();
        let mut data = vec![ZERO; n * n];
        for (i, &d) in diag.iter().enumerate() {
            data[i * n + i] = d;
        }
        Matrix::new(n, n, data, field)
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<Complex64>, field: Field) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data, field }
    }

    /// Number of rows `n`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns `m`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    /// Same entries, different field tag. Fails when asking for `Real` on a
    /// matrix with imaginary parts.
    pub fn with_field(&self, field: Field) -> Result<Self, Error> {
        Matrix::new(self.rows, self.cols, self.data.clone(), field)
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Hermitian transpose `A*`.
    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scaled(&self, c: Complex64) -> Matrix {
        let field = if c.im == 0.0 { self.field } else { Field::Complex };
        Matrix::from_parts(self.rows, self.cols, self.data.iter().map(|z| z * c).collect(), field)
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(ZERO, |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `A*·y` without forming the adjoint.
    pub fn apply_adjoint(&self, y: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(y.len(), self.rows, "vector length must match row count");
        let mut out = vec![ZERO; self.cols];
        for (i, yi) in y.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a.conj() * yi;
            }
        }
        out
    }

    /// `A·x` as a vector of the joined field.
    pub fn mul_vector(&self, x: &Vector) -> Vector {
        Vector::from_parts(self.apply(x.entries()), self.field.join(x.field()))
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, other.cols, self.field.join(other.field));
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Largest entry modulus ρ.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    pub fn frobenius(&self) -> f64 {
        norm_of(&self.data, ExtIndex::Two)
    }

    pub fn column_norm(&self, j: usize, p: ExtIndex) -> f64 {
        norm_of(&self.column(j), p)
    }

    pub fn row_norm(&self, i: usize, p: ExtIndex) -> f64 {
        norm_of(self.row(i), p)
    }

    /// Largest column ℓ1 norm (`‖A‖_{1,1}`).
    pub fn max_column_l1(&self) -> f64 {
        (0..self.cols)
            .map(|j| self.column_norm(j, ExtIndex::One))
            .fold(0.0, f64::max)
    }

    /// Largest row ℓ1 norm (`‖A‖_{∞,∞}`).
    pub fn max_row_l1(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row_norm(i, ExtIndex::One))
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(r, c, self.field.join(other.field));
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = self[(i, j)] * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} ({})", self.rows, self.cols, self.field.as_str())?;
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| match self.field {
                    Field::Real => format!("{:.6}", z.re),
                    Field::Complex => format!("{:.6}{:+.6}i", z.re, z.im),
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
