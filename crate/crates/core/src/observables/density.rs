//! Two-site reduced density matrices and concurrence.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use crate::correlations::SpinCorrelations;
use crate::error::{Error, Result};
use crate::solver::GroundState;

/// Eigenvalues of `ρ` below `-PSD_TOL` are an inconsistency.
pub const PSD_TOL: f64 = 1e-9;

pub type C4 = Matrix4<Complex64>;

/// Pauli matrices `σ^0..σ^3` in the `|↑⟩, |↓⟩` basis.
fn pauli(k: usize) -> [[Complex64; 2]; 2] {
    let (o, z, i) = (
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::i(),
    );
    match k {
        0 => [[o, z], [z, o]],
        1 => [[z, o], [o, z]],
        2 => [[z, -i], [i, z]],
        _ => [[o, z], [z, -o]],
    }
}

/// `σ^a ⊗ σ^b` with local index `2·[i down] + [j down]`.
pub fn pauli_product(a: usize, b: usize) -> C4 {
    let (pa, pb) = (pauli(a), pauli(b));
    C4::from_fn(|r, c| pa[r >> 1][c >> 1] * pb[r & 1][c & 1])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoSiteDensityMatrix {
    pub sites: (usize, usize),
    /// Basis `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩` (first label: site `i`).
    #[serde(skip)]
    pub rho: C4,
    /// `p_{αβ} = ⟨σ^α_i σ^β_j⟩`.
    pub coefficients: [[f64; 4]; 4],
}

impl TwoSiteDensityMatrix {
    /// `ρ = ¼ Σ p_{αβ} σ^α ⊗ σ^β`, validated.
    pub fn from_coefficients(sites: (usize, usize), coefficients: [[f64; 4]; 4]) -> Result<Self> {
        let mut rho = C4::zeros();
        for (a, row) in coefficients.iter().enumerate() {
            for (b, &p) in row.iter().enumerate() {
                if p != 0.0 {
                    rho += pauli_product(a, b) * Complex64::new(0.25 * p, 0.0);
                }
            }
        }
        let dm = TwoSiteDensityMatrix {
            sites,
            rho,
            coefficients,
        };
        dm.validate()?;
        Ok(dm)
    }

    pub fn validate(&self) -> Result<()> {
        let herm = (self.rho - self.rho.adjoint()).norm();
        if herm > PSD_TOL {
            return Err(Error::NonHermitian(herm));
        }
        let tr = self.rho.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > PSD_TOL {
            return Err(Error::Numerical(format!("density matrix trace {tr}")));
        }
        let lowest = self.eigenvalues()[0];
        if lowest < -PSD_TOL {
            return Err(Error::Numerical(format!(
                "density matrix has negative eigenvalue {lowest:.3e}"
            )));
        }
        Ok(())
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let e = self.rho.symmetric_eigenvalues();
        let mut v = [e[0], e[1], e[2], e[3]];
        v.sort_by(f64::total_cmp);
        v
    }

    /// Largest `|p_{αβ}|` outside `p00, p11, p22, p33, p03, p30`.
    pub fn sparsity_defect(&self) -> f64 {
        let allowed = [(0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0)];
        let mut worst = 0.0_f64;
        for a in 0..4 {
            for b in 0..4 {
                if !allowed.contains(&(a, b)) {
                    worst = worst.max(self.coefficients[a][b].abs());
                }
            }
        }
        worst
    }

    pub fn concurrence(&self) -> Result<f64> {
        concurrence(&self.rho)
    }
}

/// Two-site reduced density matrix of flat 0-based sites `pair`.
pub fn two_site_density_matrix(
    gs: &GroundState,
    pair: (usize, usize),
) -> Result<TwoSiteDensityMatrix> {
    let sc = SpinCorrelations::new(gs)?;
    density_matrix_from(&sc, pair)
}

pub fn density_matrix_from(
    sc: &SpinCorrelations,
    pair: (usize, usize),
) -> Result<TwoSiteDensityMatrix> {
    let mut p = sc.pauli_matrix(pair.0, pair.1)?;
    p[0][0] = 1.0;
    TwoSiteDensityMatrix::from_coefficients(pair, p)
}

fn hermitian_sqrt(m: &C4) -> Result<C4> {
    let eig = m.symmetric_eigen();
    let mut out = C4::zeros();
    for k in 0..4 {
        let l = eig.eigenvalues[k];
        if l < -PSD_TOL {
            return Err(Error::Numerical(format!(
                "density matrix has negative eigenvalue {l:.3e}"
            )));
        }
        let v = eig.eigenvectors.column(k);
        out += v * v.adjoint() * Complex64::new(l.max(0.0).sqrt(), 0.0);
    }
    Ok(out)
}

/// Wootters concurrence `max(r1 - r2 - r3 - r4, 0)`.
///
/// The `r_k` are the square roots of the eigenvalues of `ρ ρ̃`, obtained from
/// the Hermitian matrix `√ρ ρ̃ √ρ` that has the same spectrum.
pub fn concurrence(rho: &C4) -> Result<f64> {
    let yy = pauli_product(2, 2);
    let tilde = yy * rho.conjugate() * yy;
    let s = hermitian_sqrt(rho)?;
    let m = s * tilde * s;
    let m = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut r: Vec<f64> = m
        .symmetric_eigenvalues()
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    r.sort_by(|a, b| b.total_cmp(a));
    Ok((r[0] - r[1] - r[2] - r[3]).max(0.0))
}

/// Concurrence of a site pair in the ground state.
pub fn pair_concurrence(gs: &GroundState, pair: (usize, usize)) -> Result<f64> {
    two_site_density_matrix(gs, pair)?.concurrence()
}
