//! Majorana correlation matrix `⟨c_m c_n⟩ = δ_{mn} + iΓ_{mn}`.
//!
//! Site `l` (0-based) carries `A_l = a_l† + a_l` at index `2l` and
//! `B_l = i(a_l† - a_l)` at index `2l + 1`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::kernel::CorrelationKernel;
use crate::error::{Error, Result};
use crate::solver::GroundState;

/// Imaginary parts of `Γ` above this are an inconsistency.
pub const IMAG_TOL: f64 = 1e-10;

/// `f_{mn} = ⟨a_m† a_n⟩` and `g_{mn} = ⟨a_m† a_n†⟩` on the whole chain.
#[derive(Debug, Clone)]
pub struct FermionCorrelators {
    pub normal: DMatrix<Complex64>,
    pub anomalous: DMatrix<Complex64>,
}

/// Real-space `f` and `g` of an antiperiodic ground state.
pub fn real_space_correlators(gs: &GroundState) -> Result<FermionCorrelators> {
    let k = CorrelationKernel::new(gs)?;
    let n = k.n_sites();
    Ok(FermionCorrelators {
        normal: DMatrix::from_fn(n, n, |i, j| k.f(i, j)),
        anomalous: DMatrix::from_fn(n, n, |i, j| k.g(i, j)),
    })
}

/// `Γ` restricted to a window of consecutive sites.
#[derive(Debug, Clone)]
pub struct MajoranaCorrelationMatrix {
    /// First site of the window (flat, 0-based).
    pub first_site: usize,
    pub gamma: DMatrix<f64>,
}

/// `⟨c_a c_b⟩` for the four Majoranas of sites `l`, `k` (off-diagonal use only).
fn majorana_pair(
    f: impl Fn(usize, usize) -> Complex64,
    g: impl Fn(usize, usize) -> Complex64,
    l: usize,
    k: usize,
) -> [[Complex64; 2]; 2] {
    let i = Complex64::i();
    let d = if l == k { 1.0 } else { 0.0 };
    let (glk, gkl, flk, fkl) = (g(l, k), g(k, l), f(l, k), f(k, l));
    let aa = glk + flk - fkl + gkl.conj();
    let ab = i * (glk - flk + d - fkl - gkl.conj());
    let ba = i * (glk + flk - d + fkl - gkl.conj());
    let bb = -(glk - flk - d + fkl + gkl.conj());
    [[aa, ab], [ba, bb]]
}

fn assemble(
    n_sites: usize,
    f: impl Fn(usize, usize) -> Complex64 + Sync,
    g: impl Fn(usize, usize) -> Complex64 + Sync,
) -> Result<DMatrix<f64>> {
    let dim = 2 * n_sites;
    let rows: Vec<(Vec<f64>, f64)> = (0..dim)
        .into_par_iter()
        .map(|a| {
            let mut row = vec![0.0; dim];
            let mut worst = 0.0_f64;
            for b in 0..dim {
                if a == b {
                    continue;
                }
                let m = majorana_pair(&f, &g, a / 2, b / 2)[a % 2][b % 2];
                // Γ = -i(⟨cc⟩ - δ)
                let gamma = -Complex64::i() * m;
                worst = worst.max(gamma.im.abs());
                row[b] = gamma.re;
            }
            (row, worst)
        })
        .collect();
    let worst = rows.iter().fold(0.0_f64, |w, r| w.max(r.1));
    if worst > IMAG_TOL {
        return Err(Error::Numerical(format!(
            "Majorana correlation matrix has imaginary part {worst:.3e}"
        )));
    }
    let mut gamma = DMatrix::from_fn(dim, dim, |a, b| rows[a].0[b]);
    antisymmetrize(&mut gamma);
    Ok(gamma)
}

fn antisymmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for a in 0..n {
        m[(a, a)] = 0.0;
        for b in a + 1..n {
            let v = 0.5 * (m[(a, b)] - m[(b, a)]);
            m[(a, b)] = v;
            m[(b, a)] = -v;
        }
    }
}

/// `Γ` of the whole chain from `f` and `g`.
pub fn majorana_matrix(fc: &FermionCorrelators) -> Result<MajoranaCorrelationMatrix> {
    let n = fc.normal.nrows();
    let gamma = assemble(n, |a, b| fc.normal[(a, b)], |a, b| fc.anomalous[(a, b)])?;
    Ok(MajoranaCorrelationMatrix {
        first_site: 0,
        gamma,
    })
}

impl MajoranaCorrelationMatrix {
    /// `Γ` on sites `first_site .. first_site + n_sites` straight from the kernel.
    pub fn window(kernel: &CorrelationKernel, first_site: usize, n_sites: usize) -> Result<Self> {
        if first_site + n_sites > kernel.n_sites() {
            return Err(Error::OutOfRange(format!(
                "sites {first_site}..{} outside a chain of {}",
                first_site + n_sites,
                kernel.n_sites()
            )));
        }
        let o = first_site;
        let gamma = assemble(n_sites, |a, b| kernel.f(a + o, b + o), |a, b| kernel.g(a + o, b + o))?;
        Ok(MajoranaCorrelationMatrix { first_site, gamma })
    }

    pub fn from_ground_state(gs: &GroundState) -> Result<Self> {
        let k = CorrelationKernel::new(gs)?;
        Self::window(&k, 0, k.n_sites())
    }

    pub fn n_sites(&self) -> usize {
        self.gamma.nrows() / 2
    }

    /// Index of `A_l` (`B_l` is the next one) for an absolute site `l`.
    pub fn a_index(&self, site: usize) -> Result<usize> {
        if site < self.first_site || site >= self.first_site + self.n_sites() {
            return Err(Error::OutOfRange(format!(
                "site {site} outside window {}..{}",
                self.first_site,
                self.first_site + self.n_sites()
            )));
        }
        Ok(2 * (site - self.first_site))
    }

    /// Principal submatrix on the given (window-relative) Majorana indices.
    pub fn restrict(&self, idx: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(idx.len(), idx.len(), |a, b| self.gamma[(idx[a], idx[b])])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(n: usize, occupied: bool) -> FermionCorrelators {
        let f = if occupied {
            DMatrix::identity(n, n)
        } else {
            DMatrix::zeros(n, n)
        };
        FermionCorrelators {
            normal: f,
            anomalous: DMatrix::zeros(n, n),
        }
    }

    #[test]
    fn vacuum_blocks() {
        let g = majorana_matrix(&product(3, false)).unwrap().gamma;
        for l in 0..3 {
            assert_eq!(g[(2 * l, 2 * l + 1)], 1.0);
            assert_eq!(g[(2 * l + 1, 2 * l)], -1.0);
        }
        assert_eq!(g.iter().filter(|x| **x != 0.0).count(), 6);
    }

    #[test]
    fn filled_blocks() {
        let g = majorana_matrix(&product(2, true)).unwrap().gamma;
        assert_eq!(g[(0, 1)], -1.0);
        assert_eq!(g[(3, 2)], 1.0);
    }

    #[test]
    fn rejects_inconsistent_input() {
        let mut fc = product(2, false);
        fc.normal[(0, 1)] = Complex64::new(0.3, 0.0); // non-Hermitian f
        assert!(matches!(majorana_matrix(&fc), Err(Error::Numerical(_))));
    }
}
