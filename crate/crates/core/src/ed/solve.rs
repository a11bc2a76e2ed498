use nalgebra::SymmetricEigen;
use serde::Serialize;

use super::hamiltonian::{parity_of, Sector, SectorOperator, SpinHamiltonian};
use super::lanczos::lanczos_lowest;
use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Sectors up to this dimension are diagonalised densely; larger ones by Lanczos.
pub const DENSE_LIMIT: usize = 1024;
/// Largest sector for which a complete spectrum is produced.
pub const FULL_SPECTRUM_LIMIT: usize = 4096;

const LANCZOS_TOL: f64 = 1e-11;
const LANCZOS_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Serialize)]
pub struct EDGroundState {
    pub energy: f64,
    /// Amplitudes over the full `2^N` basis.
    #[serde(skip)]
    pub vector: Vec<f64>,
    /// Eigenvalue of `Π σ^z`.
    pub parity: i8,
    /// `‖Hv - Ev‖`.
    pub residual: f64,
    pub n_sites: usize,
}

fn fix_sign(v: &mut [f64]) {
    let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-10 * scale).copied() {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Lowest `k` levels and vectors (sector-local) of one parity sector.
fn lowest_in_sector(op: &SectorOperator, k: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let d = op.dimension();
    if d <= DENSE_LIMIT {
        let eig = SymmetricEigen::new(op.dense());
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let take = k.min(d);
        let values = order[..take].iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = order[..take]
            .iter()
            .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect();
        Ok((values, vectors))
    } else {
        let r = lanczos_lowest(|x, y| op.apply(x, y), d, k, LANCZOS_TOL, LANCZOS_SEED)?;
        Ok((r.values, r.vectors))
    }
}

/// Ground state of `ham` in a σ^z-parity sector (or overall).
pub fn ed_ground_state_of(ham: &SpinHamiltonian, sector: Sector) -> Result<EDGroundState> {
    if sector == Sector::Full {
        let even = ed_ground_state_of(ham, Sector::Even)?;
        let odd = ed_ground_state_of(ham, Sector::Odd)?;
        return Ok(if odd.energy < even.energy { odd } else { even });
    }
    let op = SectorOperator::new(ham, sector);
    let (values, vectors) = lowest_in_sector(&op, 1)?;
    let mut vector = op.basis.embed(&vectors[0], ham.n_sites);
    fix_sign(&mut vector);
    let energy = values[0];
    let mut hv = vec![0.0; vector.len()];
    ham.apply(&vector, &mut hv);
    let residual = hv
        .iter()
        .zip(&vector)
        .map(|(a, b)| (a - energy * b).powi(2))
        .sum::<f64>()
        .sqrt();
    let parity = parity_of(op.basis.states[0], ham.n_sites);
    Ok(EDGroundState {
        energy,
        vector,
        parity,
        residual,
        n_sites: ham.n_sites,
    })
}

/// Ground state of the periodic XX–YY chain.
pub fn ed_ground_state(params: &ModelParams, sector: Sector) -> Result<EDGroundState> {
    ed_ground_state_of(&SpinHamiltonian::compass(params)?, sector)
}

/// Complete ascending spectrum of a sector.
pub fn ed_spectrum(ham: &SpinHamiltonian, sector: Sector) -> Result<Vec<f64>> {
    let op = SectorOperator::new(ham, sector);
    if op.dimension() > FULL_SPECTRUM_LIMIT {
        return Err(Error::SizeLimit {
            limit: FULL_SPECTRUM_LIMIT.trailing_zeros() as usize,
            requested: ham.n_sites,
        });
    }
    let mut v: Vec<f64> = op.dense().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Lowest `k` distinct levels of a sector (degenerate copies may be merged
/// when the sector is solved iteratively).
pub fn ed_low_levels(ham: &SpinHamiltonian, sector: Sector, k: usize) -> Result<Vec<f64>> {
    let op = SectorOperator::new(ham, sector);
    Ok(lowest_in_sector(&op, k)?.0)
}
