//! Dense complex linear algebra helpers shared by every module.
//!
//! All matrices are `nalgebra::DMatrix<Complex64>`. Hermitian spectral
//! decompositions always return eigenvalues in ascending order.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Spectral decomposition of a Hermitian matrix, `m = V diag(values) V†`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermitianEigen {
    pub fn new(m: &CMat) -> Self {
        let n = m.nrows();
        if n == 0 {
            return Self {
                values: Vec::new(),
                vectors: CMat::zeros(0, 0),
            };
        }
        let eig = hermitize(m).symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut vectors = CMat::zeros(n, n);
        for (k, &i) in order.iter().enumerate() {
            vectors.set_column(k, &eig.eigenvectors.column(i));
        }
        Self { values, vectors }
    }

    /// Rebuild `V diag(f(λ)) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMat {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (k, &l) in self.values.iter().enumerate() {
            let fl = f(l);
            for i in 0..n {
                scaled[(i, k)] *= fl;
            }
        }
        &scaled * self.vectors.adjoint()
    }
}

pub fn eigvalsh(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut v: Vec<f64> = hermitize(m).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `(m + m†) / 2`.
pub fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()) * re(0.5)
}

/// Largest entrywise modulus of `m - m†`.
pub fn hermitian_deviation(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn trace(m: &CMat) -> C64 {
    m.diagonal().iter().sum()
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// Largest deviation of `u† u` from the identity.
pub fn unitarity_deviation(u: &CMat) -> f64 {
    let n = u.ncols();
    max_abs(&(u.adjoint() * u - CMat::identity(n, n)))
}

pub fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> CMat {
    CMat::from_row_iterator(rows, cols, data.iter().map(|&x| re(x)))
}

/// Determinant of the complex square matrix `rows × cols` selected from `m`.
pub fn minor_det(m: &CMat, rows: &[usize], cols: &[usize]) -> C64 {
    let k = rows.len();
    if k == 0 {
        return ONE;
    }
    let sub = CMat::from_fn(k, k, |i, j| m[(rows[i], cols[j])]);
    sub.determinant()
}

pub fn outer(v: &CVec) -> CMat {
    v * v.adjoint()
}
