//! Transverse-field Ising chain used as a cross-check of the fermionisation:
//!
//! ```text
//! H = -J Σ σ^x_{2,n} σ^x_{1,n+1} - J Σ σ^x_{1,n} σ^x_{2,n} + h/2 Σ (σ^z_{1,n} + σ^z_{2,n})
//! ```

use serde::Serialize;

use crate::error::Result;
use crate::model::{momentum_grid, Boundary, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsingEnergy {
    pub energy: f64,
    /// False when the periodic closed form is used outside `0 < h < 2J`.
    pub within_validity: bool,
}

fn branch_sum(j: f64, h: f64, ps: impl Iterator<Item = f64>) -> f64 {
    ps.map(|p| {
        let c = 4.0 * j * h * (p / 2.0).cos();
        let base = h * h + 4.0 * j * j;
        (base + c).max(0.0).sqrt() + (base - c).max(0.0).sqrt()
    })
    .sum()
}

/// `E_G = -Σ_p Σ_± (h² + 4J² ± 4Jh cos(p/2))^{1/2}`; for periodic fermions
/// the `p ∈ {0, π}` part is replaced by `-2J - (4J² + h²)^{1/2}`.
/// `α` and `β` are ignored.
pub fn ising_ground_energy(params: &ModelParams) -> Result<IsingEnergy> {
    let grid = momentum_grid(params)?;
    let (j, h) = (params.j, params.h);
    let sum = branch_sum(j, h, grid.points.iter().map(|p| p.value()));
    Ok(match params.bc {
        Boundary::Abc => IsingEnergy {
            energy: -sum,
            within_validity: true,
        },
        Boundary::Pbc => IsingEnergy {
            energy: -sum - 2.0 * j - (4.0 * j * j + h * h).sqrt(),
            within_validity: h > 0.0 && h < 2.0 * j,
        },
    })
}

/// First and second field derivatives of the antiperiodic Ising `E_G`.
pub fn ising_energy_derivatives(params: &ModelParams) -> Result<(f64, f64)> {
    let grid = momentum_grid(params)?;
    let (j, h) = (params.j, params.h);
    let (mut d1, mut d2) = (0.0, 0.0);
    for p in &grid.points {
        for s in [1.0, -1.0] {
            let b = s * 2.0 * j * (p.value() / 2.0).cos();
            let r = h * h + 2.0 * b * h + 4.0 * j * j;
            d1 -= (h + b) / r.sqrt();
            d2 -= (4.0 * j * j - b * b) / (r * r.sqrt());
        }
    }
    Ok((d1, d2))
}

/// `⟨σ^z_{1,n} + σ^z_{2,n}⟩` of the Ising chain (antiperiodic fermions).
pub fn ising_magnetization(params: &ModelParams) -> Result<f64> {
    Ok(2.0 * ising_energy_derivatives(params)?.0 / params.n_cells as f64)
}

/// `∂⟨σ^z_{1,n} + σ^z_{2,n}⟩/∂h` of the Ising chain.
pub fn ising_susceptibility(params: &ModelParams) -> Result<f64> {
    Ok(2.0 * ising_energy_derivatives(params)?.1 / params.n_cells as f64)
}
