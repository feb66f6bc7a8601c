//! Dense real-matrix kernel: row-major `f64` storage, LU with partial
//! pivoting, a cofactor-expansion adjugate for small matrices, and the
//! relative-tolerance helpers used by every numeric check in this crate.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Default relative tolerance for numeric comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Size cap for the cofactor-expansion adjugate (exponential cost).
pub const ADJUGATE_MAX_N: usize = 8;

/// Comparison threshold `tol * max(1, scale)`.
///
/// All tolerance checks in this crate are relative to the magnitude of the
/// quantities compared, with a floor of 1 so that comparisons against zero
/// stay meaningful.
#[inline]
pub fn rel_eps(tol: f64, scale: f64) -> f64 {
    tol * scale.max(1.0)
}

/// True when `x` and `y` agree within `tol` relative to `scale`.
#[inline]
pub fn approx_eq(x: f64, y: f64, tol: f64, scale: f64) -> bool {
    (x - y).abs() <= rel_eps(tol, scale)
}

/// Dense real matrix with row-major storage.
///
/// Every construction and every arithmetic kernel rejects non-finite entries,
/// so a `Matrix` always holds finite values.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Matrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(
                "matrix dimensions must be positive".into(),
            ));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        let m = Matrix { rows, cols, data };
        m.check_finite("matrix construction")?;
        Ok(m)
    }

    /// Builds a matrix from a slice of equal-length rows.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Matrix> {
        if rows.is_empty() {
            return Err(Error::DimensionMismatch("no rows given".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix::from_vec(rows.len(), cols, data)
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

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub(crate) fn check_finite(&self, context: &'static str) -> Result<()> {
        if self.data.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::Overflow(context))
        }
    }

    /// Largest absolute entry; the scale used by the relative tolerance tests.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn trace(&self) -> Result<f64> {
        self.require_square("trace")?;
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out.check_finite("matrix product")?;
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b, "matrix sum")
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b, "matrix difference")
    }

    pub fn scale(&self, factor: f64) -> Result<Matrix> {
        let mut out = self.clone();
        for x in &mut out.data {
            *x *= factor;
        }
        out.check_finite("matrix scaling")?;
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(f64, f64) -> f64,
        context: &'static str,
    ) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}: {}x{} vs {}x{}",
                context, self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(*a, *b))
            .collect();
        let out = Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        };
        out.check_finite(context)?;
        Ok(out)
    }

    /// Solves `self * X = rhs` by LU with row pivoting.
    ///
    /// Fails with a singular-matrix error when any pivot magnitude falls below
    /// `tol * max(1, scale)` with `scale` the largest absolute entry of `self`.
    pub fn lu_solve(&self, rhs: &Matrix, tol: f64) -> Result<Matrix> {
        self.require_square("lu_solve")?;
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "lu_solve: matrix is {}x{} but right-hand side has {} rows",
                self.rows, self.cols, rhs.rows
            )));
        }
        let f = lu_factor(self)?;
        let threshold = rel_eps(tol, self.max_abs());
        if f.min_pivot <= threshold {
            return Err(Error::SingularMatrix {
                pivot: f.min_pivot,
                threshold,
            });
        }
        f.solve(rhs)
    }

    /// Inverse via `lu_solve` against the identity.
    pub fn inverse(&self, tol: f64) -> Result<Matrix> {
        self.lu_solve(&Matrix::identity(self.rows), tol)
    }

    /// Determinant from the pivoted LU factorization.
    ///
    /// Singular input yields a value within roundoff of zero; it is not an error.
    pub fn determinant(&self) -> Result<f64> {
        self.require_square("determinant")?;
        let f = lu_factor(self)?;
        let mut det = f.sign;
        for k in 0..f.n {
            det *= f.lu[(k, k)];
        }
        if det.is_finite() {
            Ok(det)
        } else {
            Err(Error::Overflow("determinant"))
        }
    }

    /// Adjugate (transposed cofactor matrix) by explicit cofactor expansion.
    ///
    /// Exponential cost, so it is limited to `n <= ADJUGATE_MAX_N`; this is
    /// the verification-side route, independent of the LU kernels.
    pub fn adjugate(&self) -> Result<Matrix> {
        self.require_square("adjugate")?;
        let n = self.rows;
        if n > ADJUGATE_MAX_N {
            return Err(Error::SizeLimit {
                n,
                max: ADJUGATE_MAX_N,
            });
        }
        if n == 1 {
            return Matrix::from_vec(1, 1, vec![1.0]);
        }
        let mut adj = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                // adj[i][j] is the (j, i) cofactor.
                let minor = self.submatrix_without(j, i);
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                adj[(i, j)] = sign * det_cofactor(&minor);
            }
        }
        adj.check_finite("adjugate")?;
        Ok(adj)
    }

    fn submatrix_without(&self, row: usize, col: usize) -> Matrix {
        let n = self.rows;
        let mut out = Matrix::zeros(n - 1, n - 1);
        let mut r = 0;
        for i in 0..n {
            if i == row {
                continue;
            }
            let mut c = 0;
            for j in 0..n {
                if j == col {
                    continue;
                }
                out[(r, c)] = self[(i, j)];
                c += 1;
            }
            r += 1;
        }
        out
    }

    /// Numeric rank: Gaussian elimination with complete pivoting, counting
    /// pivots that exceed `tol` times the largest pivot.
    pub fn numeric_rank(&self, tol: f64) -> usize {
        let mut work = self.clone();
        let (r, c) = (work.rows, work.cols);
        let mut row_used = vec![false; r];
        let mut col_used = vec![false; c];
        let mut pivots: Vec<f64> = Vec::new();
        for _ in 0..r.min(c) {
            let mut best = 0.0;
            let mut best_ij = None;
            for i in 0..r {
                if row_used[i] {
                    continue;
                }
                for j in 0..c {
                    if col_used[j] {
                        continue;
                    }
                    let v = work[(i, j)].abs();
                    if v > best {
                        best = v;
                        best_ij = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best_ij else { break };
            pivots.push(best);
            row_used[pi] = true;
            col_used[pj] = true;
            let pivot = work[(pi, pj)];
            for i in 0..r {
                if row_used[i] || work[(i, pj)] == 0.0 {
                    continue;
                }
                let factor = work[(i, pj)] / pivot;
                for j in 0..c {
                    if col_used[j] {
                        continue;
                    }
                    let delta = factor * work[(pi, j)];
                    work[(i, j)] -= delta;
                }
                work[(i, pj)] = 0.0;
            }
        }
        let largest = pivots.first().copied().unwrap_or(0.0);
        pivots.iter().filter(|p| **p > tol * largest).count()
    }

    fn require_square(&self, op: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{} requires a square matrix, got {}x{}",
                op, self.rows, self.cols
            )))
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

struct LuFactors {
    lu: Matrix,
    n: usize,
    perm: Vec<usize>,
    sign: f64,
    min_pivot: f64,
}

fn lu_factor(a: &Matrix) -> Result<LuFactors> {
    let n = a.rows;
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let mut min_pivot = f64::INFINITY;
    for k in 0..n {
        let mut best = k;
        for i in k + 1..n {
            if lu[(i, k)].abs() > lu[(best, k)].abs() {
                best = i;
            }
        }
        if best != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(best, j)];
                lu[(best, j)] = tmp;
            }
            perm.swap(k, best);
            sign = -sign;
        }
        let pivot = lu[(k, k)];
        min_pivot = min_pivot.min(pivot.abs());
        if pivot == 0.0 {
            continue;
        }
        for i in k + 1..n {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            for j in k + 1..n {
                let delta = factor * lu[(k, j)];
                lu[(i, j)] -= delta;
            }
        }
    }
    lu.check_finite("lu factorization")?;
    Ok(LuFactors {
        lu,
        n,
        perm,
        sign,
        min_pivot,
    })
}

impl LuFactors {
    fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        let n = self.n;
        let mut x = Matrix::zeros(n, rhs.cols);
        for col in 0..rhs.cols {
            // forward substitution on the permuted right-hand side
            let mut y = vec![0.0; n];
            for i in 0..n {
                let mut sum = rhs[(self.perm[i], col)];
                for (j, y_j) in y.iter().enumerate().take(i) {
                    sum -= self.lu[(i, j)] * y_j;
                }
                y[i] = sum;
            }
            for i in (0..n).rev() {
                let mut sum = y[i];
                for j in i + 1..n {
                    sum -= self.lu[(i, j)] * x[(j, col)];
                }
                x[(i, col)] = sum / self.lu[(i, i)];
            }
        }
        x.check_finite("lu solve")?;
        Ok(x)
    }
}

fn det_cofactor(m: &Matrix) -> f64 {
    let n = m.rows();
    match n {
        1 => m[(0, 0)],
        2 => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        _ => {
            let mut det = 0.0;
            for j in 0..n {
                if m[(0, j)] == 0.0 {
                    continue;
                }
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                det += sign * m[(0, j)] * det_cofactor(&m.submatrix_without(0, j));
            }
            det
        }
    }
}
