//! Block entanglement entropy from the Majorana correlation matrix.

use rayon::prelude::*;
use serde::Serialize;

use crate::correlations::{CorrelationKernel, MajoranaCorrelationMatrix};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::solver::GroundState;

/// Tolerance on `|ν| ≤ 1` for the eigenvalues of `iΓ_L`.
pub const NU_TOL: f64 = 1e-9;

/// Binary entropy in bits.
fn h2(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// `S_L` in bits for sites `0 … L-1`.
///
/// `-Γ_L²` has eigenvalues `ν_k²`, each twice; `S = ½ Σ H₂((1 + ν)/2)` over
/// all of them.
pub fn entropy_of_window(gamma: &MajoranaCorrelationMatrix) -> Result<f64> {
    if gamma.gamma.nrows() == 0 {
        return Ok(0.0);
    }
    let g = &gamma.gamma;
    let sq = -(g * g);
    let mut s = 0.0;
    for &nu2 in sq.symmetric_eigenvalues().iter() {
        if nu2 > 1.0 + NU_TOL {
            return Err(Error::Numerical(format!(
                "correlation eigenvalue ν² = {nu2} exceeds one"
            )));
        }
        let nu = nu2.clamp(0.0, 1.0).sqrt();
        s += 0.5 * h2((1.0 + nu) / 2.0);
    }
    Ok(s)
}

fn entropy_from_kernel(kernel: &CorrelationKernel, l: usize) -> Result<f64> {
    if l > kernel.n_sites() {
        return Err(Error::OutOfRange(format!(
            "block of {l} sites in a chain of {}",
            kernel.n_sites()
        )));
    }
    if l == 0 {
        return Ok(0.0);
    }
    entropy_of_window(&MajoranaCorrelationMatrix::window(kernel, 0, l)?)
}

/// Entanglement entropy (bits) of the first `L` sites.
pub fn block_entropy(gs: &GroundState, l: usize) -> Result<f64> {
    entropy_from_kernel(&CorrelationKernel::new(gs)?, l)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyCurve {
    pub params: ModelParams,
    pub block_sizes: Vec<usize>,
    /// `S_L` in bits.
    pub entropies: Vec<f64>,
}

/// `S_L` for several block sizes, evaluated concurrently.
pub fn entropy_curve(gs: &GroundState, sizes: &[usize]) -> Result<EntropyCurve> {
    let kernel = CorrelationKernel::new(gs)?;
    let entropies = sizes
        .par_iter()
        .map(|&l| entropy_from_kernel(&kernel, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyCurve {
        params: gs.params,
        block_sizes: sizes.to_vec(),
        entropies,
    })
}
