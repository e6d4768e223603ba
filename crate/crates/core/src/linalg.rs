//! Dense real linear algebra used throughout the crate.
//!
//! Three value types live here: [`DenseSym`] for the small symmetric
//! matrices acting across agents (gossip matrices, weight matrices and
//! polynomials thereof), [`MultiVector`] for the `m x d` stack of per-agent
//! local copies, and [`DenseMatrix`] for rectangular data blocks. The
//! symmetric eigensolver is a cyclic Jacobi iteration, which is accurate and
//! more than fast enough for the network sizes simulated here.

use crate::error::{Error, Result};

/// Symmetric `n x n` matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSym {
    n: usize,
    data: Vec<f64>,
}

impl DenseSym {
    /// Builds a matrix from rows, rejecting asymmetric or non-finite input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeError(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(n, data)
    }

    /// Builds a matrix from a row-major buffer of length `n * n`.
    pub fn from_vec(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::ShapeError(format!(
                "buffer of length {} cannot hold a {n}x{n} matrix",
                data.len()
            )));
        }
        if let Some(v) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!("non-finite entry {v}")));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::InvalidMatrix(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from the upper triangle produced by `f(i, j)` with `i <= j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_upper(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// The mean-projection matrix `(1/n) 1 1^T`.
    pub fn averaging(n: usize) -> Self {
        let v = 1.0 / n as f64;
        Self::from_upper(n, |_, _| v)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Sets entries `(i, j)` and `(j, i)` together.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| alpha * v).collect(),
        }
    }

    /// `alpha * I + beta * self`.
    pub fn shifted(&self, alpha: f64, beta: f64) -> Self {
        let mut out = self.scaled(beta);
        for i in 0..self.n {
            out.data[i * self.n + i] += alpha;
        }
        out
    }

    /// `self * self`, which is symmetric again.
    pub fn square(&self) -> Self {
        let n = self.n;
        Self::from_upper(n, |i, j| {
            self.row(i)
                .iter()
                .zip(self.row(j))
                .map(|(a, b)| a * b)
                .sum()
        })
    }

    /// Induced infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    /// `y = M x` for a plain vector.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Row-major `m x d` stack of per-agent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiVector {
    m: usize,
    d: usize,
    data: Vec<f64>,
}

impl MultiVector {
    pub fn zeros(m: usize, d: usize) -> Self {
        Self {
            m,
            d,
            data: vec![0.0; m * d],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let d = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(m * d);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::ShapeError(format!(
                    "row {i} has length {}, expected {d}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(m, d, data)
    }

    pub fn from_vec(m: usize, d: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != m * d {
            return Err(Error::ShapeError(format!(
                "buffer of length {} cannot hold {m}x{d}",
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite multivector entry".into()));
        }
        Ok(Self { m, d, data })
    }

    /// Builds a multivector row by row from `f(i)`.
    pub fn from_fn(m: usize, d: usize, mut f: impl FnMut(usize) -> Vec<f64>) -> Self {
        let mut data = Vec::with_capacity(m * d);
        for i in 0..m {
            let row = f(i);
            assert_eq!(row.len(), d, "row {i} has the wrong length");
            data.extend(row);
        }
        Self { m, d, data }
    }

    /// The consensual stack `1 v^T`.
    pub fn consensus(m: usize, v: &[f64]) -> Self {
        let d = v.len();
        let mut data = Vec::with_capacity(m * d);
        for _ in 0..m {
            data.extend_from_slice(v);
        }
        Self { m, d, data }
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.d)
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.d.max(1)).take(self.m)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    fn check_same_shape(&self, other: &MultiVector) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeError(format!(
                "{}x{} vs {}x{}",
                self.m, self.d, other.m, other.d
            )));
        }
        Ok(())
    }

    /// `self += alpha * other`. Panics on shape mismatch.
    pub fn axpy(&mut self, alpha: f64, other: &MultiVector) {
        assert_eq!(self.shape(), other.shape(), "axpy shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
    }

    pub fn scale_mut(&mut self, alpha: f64) {
        self.data.iter_mut().for_each(|v| *v *= alpha);
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        let mut out = self.clone();
        out.scale_mut(alpha);
        out
    }

    /// `alpha * x + beta * y`. Panics on shape mismatch.
    pub fn lincomb(alpha: f64, x: &MultiVector, beta: f64, y: &MultiVector) -> Self {
        assert_eq!(x.shape(), y.shape(), "lincomb shape mismatch");
        Self {
            m: x.m,
            d: x.d,
            data: x
                .data
                .iter()
                .zip(&y.data)
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &MultiVector) -> Self {
        Self::lincomb(1.0, self, -1.0, other)
    }

    pub fn add(&self, other: &MultiVector) -> Self {
        Self::lincomb(1.0, self, 1.0, other)
    }

    /// `1^T X`, one sum per coordinate.
    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.d];
        for row in self.rows() {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        sums
    }

    pub fn row_mean(&self) -> Vec<f64> {
        let inv = 1.0 / self.m as f64;
        self.column_sums().into_iter().map(|s| s * inv).collect()
    }

    /// `(I - J) X`: every row minus the row mean.
    pub fn centered(&self) -> Self {
        let mean = self.row_mean();
        let mut out = self.clone();
        for i in 0..self.m {
            for (v, mu) in out.row_mut(i).iter_mut().zip(&mean) {
                *v -= mu;
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Largest absolute entrywise difference; shapes must agree.
    pub fn max_abs_diff(&self, other: &MultiVector) -> f64 {
        assert_eq!(self.shape(), other.shape(), "max_abs_diff shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |a, (x, y)| a.max((x - y).abs()))
    }
}

/// Frobenius inner product `<X, Y> = sum_ij X_ij Y_ij`.
pub fn frobenius_inner(x: &MultiVector, y: &MultiVector) -> Result<f64> {
    x.check_same_shape(y)?;
    Ok(x.data.iter().zip(&y.data).map(|(a, b)| a * b).sum())
}

pub fn frobenius_norm(x: &MultiVector) -> f64 {
    x.data.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `M X`: row `i` of the result is `sum_j M[i][j] X.row(j)`.
pub fn apply(mat: &DenseSym, x: &MultiVector) -> Result<MultiVector> {
    if mat.n() != x.m() {
        return Err(Error::ShapeError(format!(
            "matrix is {n}x{n} but multivector has {} rows",
            x.m(),
            n = mat.n()
        )));
    }
    let (m, d) = x.shape();
    let mut out = MultiVector::zeros(m, d);
    for i in 0..m {
        let dst = &mut out.data[i * d..(i + 1) * d];
        for (j, &w) in mat.row(i).iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for (o, v) in dst.iter_mut().zip(x.row(j)) {
                *o += w * v;
            }
        }
    }
    Ok(out)
}

/// Rectangular row-major matrix holding data blocks such as `A_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeError(format!(
                "buffer of length {} cannot hold {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// `A x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `A^T y`.
    pub fn t_matvec(&self, y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(y.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0.0 {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += yi * a;
            }
        }
        out
    }

    /// `A^T A` (`cols x cols`).
    pub fn gram_cols(&self) -> DenseSym {
        let mut g = DenseSym::zeros(self.cols);
        for r in 0..self.rows {
            let row = self.row(r);
            for i in 0..self.cols {
                let ri = row[i];
                if ri == 0.0 {
                    continue;
                }
                for j in i..self.cols {
                    g.data[i * self.cols + j] += ri * row[j];
                }
            }
        }
        for i in 0..self.cols {
            for j in (i + 1)..self.cols {
                g.data[j * self.cols + i] = g.data[i * self.cols + j];
            }
        }
        g
    }

    /// `A A^T` (`rows x rows`); shares its nonzero spectrum with `A^T A`.
    pub fn gram_rows(&self) -> DenseSym {
        DenseSym::from_upper(self.rows, |i, j| {
            self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum()
        })
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    n: usize,
    /// Row-major `n x n`; column `k` is the eigenvector of `values[k]`.
    vectors: Vec<f64>,
}

impl EigenDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Component `i` of eigenvector `k`.
    #[inline]
    pub fn vector_entry(&self, i: usize, k: usize) -> f64 {
        self.vectors[i * self.n + k]
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.vector_entry(i, k)).collect()
    }

    /// `Q diag(f(lambda)) Q^T` as a symmetric matrix.
    pub fn matrix_function(&self, f: impl Fn(f64) -> f64) -> DenseSym {
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        DenseSym::from_upper(self.n, |i, j| {
            (0..self.n)
                .map(|k| self.vector_entry(i, k) * fv[k] * self.vector_entry(j, k))
                .sum()
        })
    }

    pub fn reconstruct(&self) -> DenseSym {
        self.matrix_function(|l| l)
    }

    /// `max |Q^T Q - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = (0..n)
                    .map(|i| self.vector_entry(i, a) * self.vector_entry(i, b))
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Default Jacobi tolerance `1e-12 * n * ||M||_inf`.
pub fn default_eigen_tol(mat: &DenseSym) -> f64 {
    1e-12 * mat.n() as f64 * mat.norm_inf()
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver for a symmetric matrix.
///
/// Rotations sweep the strict upper triangle row by row until the
/// off-diagonal Frobenius mass drops to `tol`.
pub fn jacobi_eigen(mat: &DenseSym, tol: f64) -> Result<EigenDecomposition> {
    if mat.data.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidMatrix("non-finite entry".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol}")));
    }
    let n = mat.n();
    let mut a = mat.data.clone();
    let mut v = DenseSym::identity(n).data;

    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::InvalidMatrix(format!(
                "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_infinite() {
                    0.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                if t == 0.0 {
                    continue;
                }
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let nkp = c * akp - s * akq;
                    let nkq = s * akp + c * akq;
                    a[k * n + p] = nkp;
                    a[p * n + k] = nkp;
                    a[k * n + q] = nkq;
                    a[q * n + k] = nkq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&k| a[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_k, &old_k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + new_k] = v[i * n + old_k];
        }
    }
    Ok(EigenDecomposition { values, n, vectors })
}

/// Solves `H x = b` for symmetric positive definite `H` by Cholesky.
/// Returns `None` when a pivot is not safely positive.
pub fn cholesky_solve(h: &DenseSym, b: &[f64]) -> Option<Vec<f64>> {
    let n = h.n();
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut diag = h.get(j, j);
        for k in 0..j {
            diag -= l[j * n + k] * l[j * n + k];
        }
        if diag <= 1e-13 * scale {
            return None;
        }
        let ljj = diag.sqrt();
        l[j * n + j] = ljj;
        for i in (j + 1)..n {
            let mut s = h.get(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / ljj;
        }
    }
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l[i * n + k] * y[k];
        }
        y[i] /= l[i * n + i];
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            y[i] -= l[k * n + i] * y[k];
        }
        y[i] /= l[i * n + i];
    }
    Some(y)
}

/// Minimum-norm solution of `H x = b` for symmetric positive semidefinite
/// `H`, via the pseudo-inverse. Eigenvalues below `rel_cutoff * lambda_max`
/// are treated as zero.
pub fn pinv_solve(h: &DenseSym, b: &[f64], rel_cutoff: f64) -> Result<Vec<f64>> {
    let eig = jacobi_eigen(h, default_eigen_tol(h).max(f64::MIN_POSITIVE))?;
    let n = h.n();
    let lmax = eig.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let cutoff = rel_cutoff * lmax;
    let mut x = vec![0.0; n];
    for k in 0..n {
        let lam = eig.values[k];
        if lam.abs() <= cutoff {
            continue;
        }
        let coef: f64 = (0..n).map(|i| eig.vector_entry(i, k) * b[i]).sum::<f64>() / lam;
        for (i, xi) in x.iter_mut().enumerate() {
            *xi += coef * eig.vector_entry(i, k);
        }
    }
    Ok(x)
}

/// Largest eigenvalue of a symmetric matrix.
pub fn lambda_max(h: &DenseSym) -> Result<f64> {
    let eig = jacobi_eigen(h, default_eigen_tol(h).max(f64::MIN_POSITIVE))?;
    Ok(*eig.values.last().expect("nonempty matrix"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn path_laplacian(m: usize) -> DenseSym {
        DenseSym::from_upper(m, |i, j| {
            if i == j {
                if i == 0 || i == m - 1 {
                    1.0
                } else {
                    2.0
                }
            } else if j == i + 1 {
                -1.0
            } else {
                0.0
            }
        })
    }

    #[test]
    fn identity_spectrum() {
        let eig = jacobi_eigen(&DenseSym::identity(3), 1e-12).unwrap();
        assert_eq!(eig.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn two_by_two_laplacian() {
        let m = DenseSym::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        let eig = jacobi_eigen(&m, 1e-14).unwrap();
        assert!(eig.values[0].abs() < 1e-15);
        assert!((eig.values[1] - 2.0).abs() < 1e-15);
        let s = 1.0 / 2f64.sqrt();
        let v0 = eig.vector(0);
        let v1 = eig.vector(1);
        assert!((v0[0].abs() - s).abs() < 1e-14 && (v0[0] - v0[1]).abs() < 1e-14);
        assert!((v1[0].abs() - s).abs() < 1e-14 && (v1[0] + v1[1]).abs() < 1e-14);
    }

    #[test]
    fn path_four_closed_form() {
        let eig = jacobi_eigen(&path_laplacian(4), 1e-8).unwrap();
        for (k, v) in eig.values.iter().enumerate() {
            let expect = 2.0 - 2.0 * (k as f64 * PI / 4.0).cos();
            assert!((v - expect).abs() < 1e-8, "k={k}: {v} vs {expect}");
        }
    }

    #[test]
    fn rejects_non_finite_and_asymmetric() {
        assert!(matches!(
            DenseSym::from_rows(&[vec![1.0, 2.0], vec![2.0001, 1.0]]),
            Err(Error::InvalidMatrix(_))
        ));
        assert!(matches!(
            DenseSym::from_rows(&[vec![f64::NAN]]),
            Err(Error::InvalidMatrix(_))
        ));
    }

    #[test]
    fn apply_identity_and_averaging() {
        let x = MultiVector::from_rows(&[vec![1.0, 2.0], vec![3.0, -1.0], vec![5.0, 2.0]]).unwrap();
        assert_eq!(apply(&DenseSym::identity(3), &x).unwrap(), x);
        let avg = apply(&DenseSym::averaging(3), &x).unwrap();
        for row in avg.rows() {
            assert!((row[0] - 3.0).abs() < 1e-15);
            assert!((row[1] - 1.0).abs() < 1e-15);
        }
        assert!(matches!(
            apply(&DenseSym::identity(2), &x),
            Err(Error::ShapeError(_))
        ));
    }

    #[test]
    fn frobenius_basics() {
        let x = MultiVector::consensus(2, &[1.0, 1.0, 1.0]);
        assert_eq!(frobenius_inner(&x, &x).unwrap(), 6.0);
        assert!((frobenius_norm(&x) - 6f64.sqrt()).abs() < 1e-15);
        let y = MultiVector::zeros(3, 2);
        assert!(matches!(frobenius_inner(&x, &y), Err(Error::ShapeError(_))));
    }

    #[test]
    fn cholesky_and_pinv_agree_on_spd() {
        let h = DenseSym::from_rows(&[
            vec![4.0, 1.0, 0.5],
            vec![1.0, 3.0, 0.2],
            vec![0.5, 0.2, 2.0],
        ])
        .unwrap();
        let b = [1.0, -2.0, 0.5];
        let x1 = cholesky_solve(&h, &b).unwrap();
        let x2 = pinv_solve(&h, &b, 1e-12).unwrap();
        for (a, c) in x1.iter().zip(&x2) {
            assert!((a - c).abs() < 1e-12);
        }
        let r = h.matvec(&x1);
        for (a, c) in r.iter().zip(&b) {
            assert!((a - c).abs() < 1e-12);
        }
    }

    #[test]
    fn cholesky_declines_singular() {
        let h = DenseSym::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        assert!(cholesky_solve(&h, &[1.0, -1.0]).is_none());
        let x = pinv_solve(&h, &[1.0, -1.0], 1e-12).unwrap();
        assert!((x[0] - 0.5).abs() < 1e-14 && (x[1] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn gram_shapes_share_spectrum() {
        let a = DenseMatrix::new(2, 3, vec![1.0, 2.0, 0.0, -1.0, 0.5, 3.0]).unwrap();
        let l1 = lambda_max(&a.gram_cols()).unwrap();
        let l2 = lambda_max(&a.gram_rows()).unwrap();
        assert!((l1 - l2).abs() < 1e-12 * l1);
    }
}
