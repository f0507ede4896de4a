//! Dense row-major kernels: LU inversion with partial pivoting, matrix
//! products and a power-iteration spectral radius estimate.

use std::fmt;
use std::ops::{Index, IndexMut};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Below this size the rayon split costs more than it saves.
const PAR_MIN_DIM: usize = 192;

/// Relative pivot threshold for declaring a matrix singular.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-13;

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
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

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `max |self - other|` over all entries.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }

    /// `self * v` for a column vector.
    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .chunks_exact(self.cols.max(1))
            .take(self.rows)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
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

#[inline]
fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi -= alpha * xi;
    }
}

/// Standard product `a * b`.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let (n, m) = (a.rows, b.cols);
    let mut out = Matrix::zeros(n, m);
    if m == 0 {
        return Ok(out);
    }
    let kernel = |(i, out_row): (usize, &mut [f64])| {
        for (k, &aik) in a.row(i).iter().enumerate() {
            if aik != 0.0 {
                axpy(out_row, -aik, b.row(k));
            }
        }
    };
    if n >= PAR_MIN_DIM {
        out.data.par_chunks_mut(m).enumerate().for_each(kernel);
    } else {
        out.data.chunks_mut(m).enumerate().for_each(kernel);
    }
    Ok(out)
}

/// In-place LU factors of a square matrix: unit lower `L` below the diagonal,
/// `U` on and above it, with `perm[i]` the original row now at position `i`.
struct LuFactors {
    lu: Vec<f64>,
    perm: Vec<usize>,
}

fn lu_factor(m: &Matrix) -> Result<LuFactors> {
    let n = m.rows;
    let mut lu = m.data.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    let mut col_scale = vec![0.0f64; n];
    for row in lu.chunks_exact(n) {
        for (s, x) in col_scale.iter_mut().zip(row) {
            *s = s.max(x.abs());
        }
    }

    for k in 0..n {
        let (mut piv, mut piv_abs) = (k, lu[k * n + k].abs());
        for i in k + 1..n {
            let a = lu[i * n + k].abs();
            if a > piv_abs {
                piv = i;
                piv_abs = a;
            }
        }
        if col_scale[k] == 0.0 || piv_abs < SINGULAR_PIVOT_RATIO * col_scale[k] {
            return Err(Error::Singular { column: k });
        }
        if piv != k {
            for j in 0..n {
                lu.swap(k * n + j, piv * n + j);
            }
            perm.swap(k, piv);
        }

        let (head, tail) = lu.split_at_mut((k + 1) * n);
        let pivot_row = &head[k * n..];
        let pivot = pivot_row[k];
        let update = |row: &mut [f64]| {
            let l = row[k] / pivot;
            row[k] = l;
            if l != 0.0 {
                axpy(&mut row[k + 1..], l, &pivot_row[k + 1..]);
            }
        };
        if n - k >= PAR_MIN_DIM {
            tail.par_chunks_mut(n).for_each(update);
        } else {
            tail.chunks_mut(n).for_each(update);
        }
    }
    Ok(LuFactors { lu, perm })
}

/// Inverse by LU decomposition with partial pivoting.
///
/// Fails with [`Error::Singular`] when a pivot falls below
/// `1e-13 * max |column entry|` of the input.
pub fn lu_invert(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "cannot invert a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if m.data.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(
            "matrix to invert has non-finite entries".into(),
        ));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let LuFactors { lu, perm } = lu_factor(m)?;

    // inv(L), lower triangular, so row i only touches columns 0..=i.
    let mut x = Matrix::identity(n).data;
    for k in 0..n {
        let (head, tail) = x.split_at_mut((k + 1) * n);
        let src = &head[k * n..k * n + k + 1];
        let lrows = &lu[(k + 1) * n..];
        let update = |(off, row): (usize, &mut [f64])| {
            let l = lrows[off * n + k];
            if l != 0.0 {
                axpy(&mut row[..=k], l, src);
            }
        };
        if n - k >= PAR_MIN_DIM {
            tail.par_chunks_mut(n).enumerate().for_each(update);
        } else {
            tail.chunks_mut(n).enumerate().for_each(update);
        }
    }

    // inv(U) * inv(L), column-oriented back substitution.
    for k in (0..n).rev() {
        let (head, tail) = x.split_at_mut(k * n);
        let row_k = &mut tail[..n];
        let d = lu[k * n + k];
        row_k.iter_mut().for_each(|v| *v /= d);
        let row_k = &*row_k;
        let update = |(i, row): (usize, &mut [f64])| {
            let u = lu[i * n + k];
            if u != 0.0 {
                axpy(row, u, row_k);
            }
        };
        if k >= PAR_MIN_DIM {
            head.par_chunks_mut(n).enumerate().for_each(update);
        } else {
            head.chunks_mut(n).enumerate().for_each(update);
        }
    }

    // inv(A) = inv(U) inv(L) P: column i of the product lands in column perm[i].
    let mut out = vec![0.0; n * n];
    for (dst, src) in out.chunks_exact_mut(n).zip(x.chunks_exact(n)) {
        for (i, &p) in perm.iter().enumerate() {
            dst[p] = src[i];
        }
    }
    Ok(Matrix {
        rows: n,
        cols: n,
        data: out,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRadius {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub const DEFAULT_SPECTRAL_TOL: f64 = 1e-6;

pub fn default_max_iter(n: usize) -> usize {
    10 * n + 100
}

/// Power-iteration estimate of the largest eigenvalue magnitude of a
/// non-negative square matrix.
///
/// Starts from the all-ones vector. The estimate is the geometric mean of the
/// last two growth ratios `|M v| / |v|`, which converges even when the
/// matrix is periodic (bipartite graphs, rings) and single ratios oscillate.
/// Returns 0 as soon as an iterate vanishes (nilpotent input).
pub fn spectral_radius(m: &Matrix, tol: f64, max_iter: usize) -> Result<SpectralRadius> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "spectral radius of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tol must be > 0, got {tol}"
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(SpectralRadius {
            value: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut last_ratio: Option<f64> = None;
    let mut last_estimate: Option<f64> = None;
    for it in 1..=max_iter {
        let w = m.mul_vec(&v)?;
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(SpectralRadius {
                value: 0.0,
                iterations: it,
                converged: true,
            });
        }
        let estimate = match last_ratio {
            Some(prev) => (prev * norm).sqrt(),
            None => norm,
        };
        if let Some(prev) = last_estimate {
            if (estimate - prev).abs() < tol {
                return Ok(SpectralRadius {
                    value: estimate,
                    iterations: it,
                    converged: true,
                });
            }
        }
        last_ratio = Some(norm);
        last_estimate = Some(estimate);
        v = w.into_iter().map(|x| x / norm).collect();
    }
    Ok(SpectralRadius {
        value: last_estimate.unwrap_or(0.0),
        iterations: max_iter,
        converged: false,
    })
}
