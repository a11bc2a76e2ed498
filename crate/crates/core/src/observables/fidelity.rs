//! Ground-state fidelity `F = Π_{p'} |⟨v(x, p') | v(x + δ, p')⟩|` and its
//! susceptibility `χ_F = -2 ln F / δ²`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Boundary, ModelParams};
use crate::solver::{ground_state, GroundState};

/// Step used when none is given.
pub const DEFAULT_STEP: f64 = 1e-4;
/// Steps of the Richardson extrapolation.
pub const RICHARDSON_STEPS: [f64; 3] = [1e-3, 5e-4, 1e-4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Alpha,
    #[serde(alias = "field")]
    H,
}

impl Direction {
    pub fn shift(self, params: &ModelParams, delta: f64) -> ModelParams {
        match self {
            Direction::Alpha => params.with_alpha(params.alpha + delta),
            Direction::H => params.with_h(params.h + delta),
        }
    }

    pub fn value(self, params: &ModelParams) -> f64 {
        match self {
            Direction::Alpha => params.alpha,
            Direction::H => params.h,
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Alpha => "alpha",
            Direction::H => "h",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fidelity {
    pub fidelity: f64,
    /// `ln F`, accurate even when `1 - F` is below machine precision.
    pub ln_fidelity: f64,
    /// Some block at either endpoint needed degenerate perturbation theory.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelitySusceptibility {
    pub chi_f: f64,
    pub chi_f_per_nprime: f64,
    pub delta: f64,
    pub degenerate: bool,
}

fn require_abc(params: &ModelParams) -> Result<()> {
    if params.bc != Boundary::Abc {
        return Err(Error::RequiresAbc("fidelity"));
    }
    Ok(())
}

/// Fidelity between two ground states on the same momentum grid.
pub fn fidelity_between(a: &GroundState, b: &GroundState) -> Result<Fidelity> {
    if a.per_block.len() != b.per_block.len() {
        return Err(Error::InvalidParams(
            "ground states live on different momentum grids".into(),
        ));
    }
    let mut ln_f = 0.0;
    for (x, y) in a.per_block.iter().zip(&b.per_block) {
        let ov: Complex64 = x.vector.iter().zip(&y.vector).map(|(u, v)| u.conj() * v).sum();
        // 1 - |ov|² as the norm of the orthogonal remainder: no cancellation.
        let loss: f64 = y
            .vector
            .iter()
            .zip(&x.vector)
            .map(|(v, u)| (v - ov * u).norm_sqr())
            .sum();
        ln_f += 0.5 * (-loss.min(1.0)).ln_1p();
    }
    Ok(Fidelity {
        fidelity: ln_f.exp(),
        ln_fidelity: ln_f,
        degenerate: a.is_degenerate() || b.is_degenerate(),
    })
}

/// `F(x, x + δ)` along `direction`.
pub fn fidelity(params: &ModelParams, direction: Direction, delta: f64) -> Result<Fidelity> {
    require_abc(params)?;
    let a = ground_state(params)?;
    if delta == 0.0 {
        return fidelity_between(&a, &a);
    }
    let b = ground_state(&direction.shift(params, delta))?;
    fidelity_between(&a, &b)
}

/// `χ_F = -2 ln F(x, x + δ) / δ²`.
pub fn fidelity_susceptibility(
    params: &ModelParams,
    direction: Direction,
    delta: f64,
) -> Result<FidelitySusceptibility> {
    if !(delta.is_finite() && delta != 0.0) {
        return Err(Error::InvalidParams(format!("step must be nonzero, got {delta}")));
    }
    let f = fidelity(params, direction, delta)?;
    let chi_f = (-2.0 * f.ln_fidelity / (delta * delta)).max(0.0);
    Ok(FidelitySusceptibility {
        chi_f,
        chi_f_per_nprime: chi_f / params.n_cells as f64,
        delta,
        degenerate: f.degenerate,
    })
}

/// `δ → 0` limit of `χ_F(δ)` by quadratic extrapolation through
/// [`RICHARDSON_STEPS`].
pub fn fidelity_susceptibility_extrapolated(
    params: &ModelParams,
    direction: Direction,
) -> Result<FidelitySusceptibility> {
    let samples = RICHARDSON_STEPS
        .iter()
        .map(|&d| fidelity_susceptibility(params, direction, d))
        .collect::<Result<Vec<_>>>()?;
    // Lagrange interpolation of χ(δ) evaluated at δ = 0.
    let mut chi_f = 0.0;
    for (i, si) in samples.iter().enumerate() {
        let mut w = 1.0;
        for (j, sj) in samples.iter().enumerate() {
            if i != j {
                w *= sj.delta / (sj.delta - si.delta);
            }
        }
        chi_f += w * si.chi_f;
    }
    Ok(FidelitySusceptibility {
        chi_f,
        chi_f_per_nprime: chi_f / params.n_cells as f64,
        delta: 0.0,
        degenerate: samples.iter().any(|s| s.degenerate),
    })
}

/// `χ_F` along `h` on a grid of fields, evaluated concurrently.
pub fn fs_scan(params: &ModelParams, hs: &[f64], delta: f64) -> Result<Vec<FidelitySusceptibility>> {
    hs.par_iter()
        .map(|&h| fidelity_susceptibility(&params.with_h(h), Direction::H, delta))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityMapPoint {
    pub alpha: f64,
    pub h: f64,
    pub f_alpha: f64,
    pub f_h: f64,
    pub f_min: f64,
    pub degenerate: bool,
}

/// `F_min = min[F(h, h + δ), F(α, α + δ)]` on an `(α, h)` grid (row-major in α).
pub fn fidelity_map(
    params: &ModelParams,
    alphas: &[f64],
    hs: &[f64],
    delta: f64,
) -> Result<Vec<FidelityMapPoint>> {
    require_abc(params)?;
    let points: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| hs.iter().map(move |&h| (a, h)))
        .collect();
    points
        .par_iter()
        .map(|&(alpha, h)| {
            let p = params.with_alpha(alpha).with_h(h);
            let base = ground_state(&p)?;
            let fa = fidelity_between(&base, &ground_state(&Direction::Alpha.shift(&p, delta))?)?;
            let fh = fidelity_between(&base, &ground_state(&Direction::H.shift(&p, delta))?)?;
            Ok(FidelityMapPoint {
                alpha,
                h,
                f_alpha: fa.fidelity,
                f_h: fh.fidelity,
                f_min: fa.fidelity.min(fh.fidelity),
                degenerate: fa.degenerate || fh.degenerate,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ed::{ed_ground_state, overlap, Sector};

    #[test]
    fn zero_step_is_one() {
        let f = fidelity(&ModelParams::compass(0.7, 0.3, 10), Direction::H, 0.0).unwrap();
        assert_eq!(f.fidelity, 1.0);
    }

    #[test]
    fn matches_oracle_overlap() {
        let p = ModelParams::compass(0.5, 0.2, 4);
        let delta = 1e-4;
        let f = fidelity(&p, Direction::Alpha, delta).unwrap();
        let a = ed_ground_state(&p, Sector::Even).unwrap();
        let b = ed_ground_state(&Direction::Alpha.shift(&p, delta), Sector::Even).unwrap();
        let ov = overlap(&a.vector, &b.vector).unwrap().abs();
        assert!((f.fidelity - ov).abs() < 1e-8);
        // Also at a finite step, where the overlap is visibly below one.
        let f = fidelity(&p, Direction::H, 0.3).unwrap();
        let b = ed_ground_state(&Direction::H.shift(&p, 0.3), Sector::Even).unwrap();
        let ov = overlap(&a.vector, &b.vector).unwrap().abs();
        assert!(ov < 0.999);
        assert!((f.fidelity - ov).abs() < 1e-8);
    }

    #[test]
    fn quadratic_in_step() {
        let p = ModelParams::compass(0.5, 0.7, 20);
        let r = |d: f64| {
            let f = fidelity(&p, Direction::H, d).unwrap();
            -f.ln_fidelity / (d * d)
        };
        let (a, b) = (r(1e-3), r(1e-4));
        assert!(((a - b) / b).abs() < 0.05);
    }

    #[test]
    fn dimer_line_is_smooth() {
        let chi: Vec<f64> = [0.9, 1.0, 1.1]
            .iter()
            .map(|&h| {
                fidelity_susceptibility(&ModelParams::compass(0.0, h, 20), Direction::Alpha, 1e-4)
                    .unwrap()
                    .chi_f
            })
            .collect();
        assert!(chi.iter().all(|c| c.is_finite() && *c >= 0.0));
        assert!((chi[0] - 2.0 * chi[1] + chi[2]).abs() < 0.1 * chi[1]);
    }

    #[test]
    fn richardson_close_to_plain() {
        let p = ModelParams::compass(0.8, 0.5, 20);
        let plain = fidelity_susceptibility(&p, Direction::H, 1e-4).unwrap().chi_f;
        let extra = fidelity_susceptibility_extrapolated(&p, Direction::H).unwrap().chi_f;
        assert!(((plain - extra) / extra).abs() < 1e-3);
    }

    #[test]
    fn degenerate_flag_at_zero_field() {
        let s = fidelity_susceptibility(&ModelParams::compass(1.0, 0.0, 20), Direction::H, 1e-4)
            .unwrap();
        assert!(s.degenerate);
        let s = fidelity_susceptibility(&ModelParams::compass(1.0, 0.3, 20), Direction::H, 1e-4)
            .unwrap();
        assert!(!s.degenerate);
    }

    #[test]
    fn rejects_periodic() {
        let p = ModelParams::compass(1.0, 0.3, 4).with_bc(Boundary::Pbc);
        assert!(matches!(fidelity(&p, Direction::H, 1e-4), Err(Error::RequiresAbc(_))));
    }
}
