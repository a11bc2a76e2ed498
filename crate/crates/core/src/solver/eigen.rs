use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute Hermiticity tolerance, scaled by the largest entry when that exceeds 1.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: DMatrix<Complex64>,
}

impl Eigensystem {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k).iter().copied().collect()
    }
}

pub fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Rotate `v` so its largest-modulus component is real and positive.
///
/// Components whose moduli agree within `1e-12` count as tied; the lowest
/// index wins.
pub fn fix_phase(v: &mut [Complex64]) {
    let mut pivot = 0;
    let mut best = -1.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best + 1e-12 {
            best = m;
            pivot = i;
        }
    }
    if best <= 0.0 {
        return;
    }
    let phase = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
    v[pivot] = Complex64::new(v[pivot].re, 0.0);
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are returned ascending and every eigenvector is phase fixed
/// with [`fix_phase`].
pub fn hermitian_eigensystem(m: &DMatrix<Complex64>) -> Result<Eigensystem> {
    if !m.is_square() {
        return Err(Error::Numerical(format!(
            "eigensystem of non-square {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let scale = m.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
    let defect = hermiticity_defect(m);
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NonHermitian(defect));
    }
    let eig = SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut v: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
        fix_phase(&mut v);
        for (row, z) in v.into_iter().enumerate() {
            vectors[(row, col)] = z;
        }
    }
    Ok(Eigensystem { values, vectors })
}

/// Eigenvalues (ascending) of a real symmetric matrix.
pub fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut vals: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}
