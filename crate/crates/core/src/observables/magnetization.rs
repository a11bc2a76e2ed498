//! Pseudospin magnetization `⟨σ^z_{1,n} + σ^z_{2,n}⟩` and susceptibility.

use rayon::prelude::*;
use serde::Serialize;

use crate::correlations::CorrelationKernel;
use crate::error::{Error, Result};
use crate::model::{momentum_grid, Boundary, ModelParams};
use crate::solver::spectrum::radicands;
use crate::solver::{ground_state, ising, GroundState};

/// Cell-averaged `⟨σ^z_{1,n} + σ^z_{2,n}⟩ = 2f_{11} + 2f_{22} - 2`.
pub fn magnetization(gs: &GroundState) -> Result<f64> {
    let k = CorrelationKernel::new(gs)?;
    Ok(2.0 * (k.f(0, 0).re + k.f(1, 1).re) - 2.0)
}

fn closed_form_grid(params: &ModelParams) -> Result<Vec<(f64, f64)>> {
    if params.beta != 1.0 || params.bc != Boundary::Abc {
        return Err(Error::InvalidParams(
            "closed-form magnetization needs the compass coupling (beta = 1) with ABC".into(),
        ));
    }
    Ok(momentum_grid(params)?
        .points
        .iter()
        .map(|p| radicands(params, p.value()))
        .collect())
}

/// `m = -(2/N') ∂E_G/∂h = (4/N') Σ_{p'} (h/J)/√X`.
pub fn magnetization_analytic(params: &ModelParams) -> Result<f64> {
    let r = closed_form_grid(params)?;
    let s: f64 = r.iter().map(|(x, _)| params.h / params.j / x.sqrt()).sum();
    Ok(4.0 * s / params.n_cells as f64)
}

/// `χ = ∂m/∂h = (4/N') Σ_{p'} Y / (J X^{3/2})`.
pub fn susceptibility_analytic(params: &ModelParams) -> Result<f64> {
    let r = closed_form_grid(params)?;
    let s: f64 = r.iter().map(|(x, y)| y / (params.j * x.powf(1.5))).sum();
    Ok(4.0 * s / params.n_cells as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SusceptibilityPoint {
    pub h: f64,
    pub magnetization: f64,
    pub chi: f64,
}

/// `χ` by finite differences of the magnetization on a monotone `h` grid:
/// central in the interior, one-sided at the ends.
pub fn susceptibility(params: &ModelParams, hs: &[f64]) -> Result<Vec<SusceptibilityPoint>> {
    if hs.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "susceptibility needs at least 3 fields, got {}",
            hs.len()
        )));
    }
    let increasing = hs.windows(2).all(|w| w[1] > w[0]);
    let decreasing = hs.windows(2).all(|w| w[1] < w[0]);
    if !(increasing || decreasing) {
        return Err(Error::InvalidParams("field grid must be strictly monotone".into()));
    }
    let m = hs
        .par_iter()
        .map(|&h| magnetization(&ground_state(&params.with_h(h))?))
        .collect::<Result<Vec<_>>>()?;
    let n = hs.len();
    Ok((0..n)
        .map(|i| {
            let (a, b) = match i {
                0 => (0, 1),
                i if i == n - 1 => (n - 2, n - 1),
                i => (i - 1, i + 1),
            };
            SusceptibilityPoint {
                h: hs[i],
                magnetization: m[i],
                chi: (m[b] - m[a]) / (hs[b] - hs[a]),
            }
        })
        .collect())
}

/// Field of the finite-size susceptibility maximum of the transverse Ising
/// chain, by golden-section search on `[lo, hi]`.
pub fn ising_susceptibility_peak(params: &ModelParams, lo: f64, hi: f64) -> Result<f64> {
    let chi = |h: f64| ising::ising_susceptibility(&params.with_h(h)).map(f64::abs);
    golden_max(chi, lo, hi, 1e-10)
}

/// Maximiser of a unimodal function by golden-section search.
pub fn golden_max(f: impl Fn(f64) -> Result<f64>, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ed::{self, ed_ground_state, Sector};

    #[test]
    fn limits() {
        let gs = ground_state(&ModelParams::compass(1.0, 0.0, 16)).unwrap();
        assert!(magnetization(&gs).unwrap().abs() < 1e-12);
        let gs = ground_state(&ModelParams::compass(1.0, 1e4, 16)).unwrap();
        assert!((magnetization(&gs).unwrap() - 2.0).abs() < 1e-6);
        let p = ModelParams::compass(1.0, 1e4, 16);
        assert!(susceptibility_analytic(&p).unwrap() < 1e-6);
    }

    #[test]
    fn correlator_route_matches_closed_form() {
        for (a, h) in [(0.4, 0.3), (1.0, 0.01), (1.7, -0.8)] {
            let p = ModelParams::compass(a, h, 32);
            let m = magnetization(&ground_state(&p).unwrap()).unwrap();
            assert!((m - magnetization_analytic(&p).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn analytic_chi_is_derivative() {
        let p = ModelParams::compass(1.0, 0.05, 64);
        let step = 1e-5;
        let fd = (magnetization_analytic(&p.with_h(0.05 + step)).unwrap()
            - magnetization_analytic(&p.with_h(0.05 - step)).unwrap())
            / (2.0 * step);
        assert!((fd - susceptibility_analytic(&p).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn even_in_field() {
        let p = ModelParams::compass(0.7, 0.0, 8);
        let hs = [-0.6, -0.3, 0.0, 0.3, 0.6];
        let c = susceptibility(&p, &hs).unwrap();
        assert!((c[1].chi - c[3].chi).abs() < 1e-10);
        assert!((c[0].chi - c[4].chi).abs() < 1e-10);
    }

    #[test]
    fn matches_oracle_differences() {
        let p = ModelParams::compass(0.8, 0.0, 6);
        let hs = [0.3, 0.31, 0.32];
        let ours = susceptibility(&p, &hs).unwrap();
        let m: Vec<f64> = hs
            .iter()
            .map(|&h| {
                let e = ed_ground_state(&p.with_h(h), Sector::Even).unwrap();
                ed::magnetization(&e.vector).unwrap()
            })
            .collect();
        assert!((ours[1].chi - (m[2] - m[0]) / 0.02).abs() < 1e-5);
        assert!((ours[1].magnetization - m[1]).abs() < 1e-8);
    }

    #[test]
    fn rejects_short_grids() {
        let p = ModelParams::compass(1.0, 0.0, 8);
        assert!(matches!(
            susceptibility(&p, &[0.1, 0.2]),
            Err(Error::InsufficientData(_))
        ));
        assert!(susceptibility(&p, &[0.1, 0.3, 0.2]).is_err());
    }

    #[test]
    fn ising_peak_near_critical_field() {
        let p = ModelParams::compass(1.0, 0.0, 64);
        let hc = ising_susceptibility_peak(&p, 1.5, 2.5).unwrap();
        assert!((hc - 2.0).abs() < 0.05, "{hc}");
    }
}
