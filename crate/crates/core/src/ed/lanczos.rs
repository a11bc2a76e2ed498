use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LanczosResult {
    /// Lowest Ritz values, ascending.
    pub values: Vec<f64>,
    /// Matching normalised Ritz vectors.
    pub vectors: Vec<Vec<f64>>,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Lowest `k` eigenpairs of a real symmetric operator by Lanczos iteration
/// with full reorthogonalisation.
///
/// Converged when every requested Ritz pair has residual `‖Av - θv‖ < tol`.
/// Exactly degenerate levels appear once (the Krylov space of one start
/// vector contains a single copy).
pub fn lanczos_lowest(
    apply: impl Fn(&[f64], &mut [f64]),
    dim: usize,
    k: usize,
    tol: f64,
    seed: u64,
) -> Result<LanczosResult> {
    let max_iter = dim.min(400);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let n0 = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|x| *x /= n0);

    let mut basis: Vec<Vec<f64>> = vec![q];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![0.0; dim];

    loop {
        let m = basis.len();
        apply(&basis[m - 1], &mut w);
        let a = dot(&w, &basis[m - 1]);
        alphas.push(a);
        // Two passes of classical Gram–Schmidt against the whole basis.
        for _ in 0..2 {
            for v in &basis {
                let c = dot(&w, v);
                axpy(-c, v, &mut w);
            }
        }
        let b = dot(&w, &w).sqrt();

        let exhausted = b < 1e-12 || m == max_iter;
        if m >= k && (m.is_multiple_of(5) || exhausted) {
            let t = tridiagonal(&alphas, &betas);
            let eig = SymmetricEigen::new(t);
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
            let converged = order
                .iter()
                .take(k)
                .all(|&i| (b * eig.eigenvectors[(m - 1, i)]).abs() < tol);
            if converged || exhausted {
                if !converged && m < dim {
                    return Err(Error::Numerical(format!(
                        "Lanczos did not converge in {m} iterations"
                    )));
                }
                let mut values = Vec::with_capacity(k);
                let mut vectors = Vec::with_capacity(k);
                for &i in order.iter().take(k.min(m)) {
                    values.push(eig.eigenvalues[i]);
                    let mut v = vec![0.0; dim];
                    for (j, bv) in basis.iter().enumerate() {
                        axpy(eig.eigenvectors[(j, i)], bv, &mut v);
                    }
                    let nv = dot(&v, &v).sqrt();
                    v.iter_mut().for_each(|x| *x /= nv);
                    vectors.push(v);
                }
                return Ok(LanczosResult {
                    values,
                    vectors,
                    iterations: m,
                });
            }
        }
        betas.push(b);
        let next: Vec<f64> = w.iter().map(|x| x / b).collect();
        basis.push(next);
    }
}

fn tridiagonal(alphas: &[f64], betas: &[f64]) -> DMatrix<f64> {
    let m = alphas.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alphas[i];
        if i + 1 < m {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    t
}
