use serde::Serialize;

use super::block::Parity;
use crate::error::{Error, Result};
use crate::model::{momentum_grid, Boundary, ModelParams, Momentum};

/// Radicands `(X, Y)` of the block eigenvalues:
/// `X = (h/J)² + 1 + 2α cos p + α²`, `Y = 1 + 2α cos p + α²`.
pub fn radicands(params: &ModelParams, p: f64) -> (f64, f64) {
    let a = params.alpha;
    let y = 1.0 + 2.0 * a * p.cos() + a * a;
    let y = y.max(0.0);
    (y + (params.h / params.j).powi(2), y)
}

/// Quasiparticle branches at one momentum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub momentum: Momentum,
    pub parity: Parity,
    /// `(s', ε^{(s')})`, labels starting at 1.
    pub branches: Vec<(u8, f64)>,
}

impl Spectrum {
    pub fn energy(&self, label: u8) -> Option<f64> {
        self.branches.iter().find(|b| b.0 == label).map(|b| b.1)
    }
}

/// Closed-form branches: four `±2J√X, ±2J√Y` for antiperiodic fermions,
/// eight `±J√X ± J√Y` (pairwise equal labels) for periodic ones.
/// These closed forms hold for the compass coupling `β = 1` only.
pub fn spectrum_analytic(params: &ModelParams, p: Momentum) -> Result<Spectrum> {
    if params.beta != 1.0 {
        return Err(Error::InvalidParams(format!(
            "closed-form spectrum requires beta = 1, got {}",
            params.beta
        )));
    }
    let grid = momentum_grid(params)?;
    if !grid.contains(&p) {
        return Err(Error::OffGrid {
            momentum: p.to_string(),
            bc: params.bc.to_string(),
            n_cells: params.n_cells,
        });
    }
    let (x, y) = radicands(params, p.value());
    let (sx, sy) = (params.j * x.sqrt(), params.j * y.sqrt());
    Ok(match params.bc {
        Boundary::Abc => Spectrum {
            momentum: p,
            parity: Parity::Even,
            branches: vec![(1, 2.0 * sx), (2, -2.0 * sx), (3, 2.0 * sy), (4, -2.0 * sy)],
        },
        Boundary::Pbc => {
            let values = [-sx - sy, -sx + sy, sx - sy, sx + sy];
            Spectrum {
                momentum: p,
                parity: Parity::Odd,
                branches: (0..8).map(|k| (k as u8 + 1, values[k / 2])).collect(),
            }
        }
    })
}

/// The sixteen real-space levels of the four-site compass chain, in the
/// order `ω^{(1)} … ω^{(16)}`; `ω^{(1-8)}` belong to the even σ^z-parity
/// sector and `ω^{(9-16)}` to the odd one. Only `J`, `α` and `h` enter
/// (compass coupling, `β = 1`).
pub fn spectra_n4(params: &ModelParams) -> [f64; 16] {
    let (j, a) = (params.j, params.alpha);
    let hj2 = (params.h / j).powi(2);
    let r1 = 2.0 * j * (hj2 + 1.0 + a * a).sqrt();
    let r3 = 2.0 * j * (1.0 + a * a).sqrt();
    let rm = j * (hj2 + 1.0 - 2.0 * a + a * a).sqrt();
    let rp = j * (hj2 + 1.0 + 2.0 * a + a * a).sqrt();
    [
        r1,
        -r1,
        r3,
        -r3,
        0.0,
        0.0,
        0.0,
        0.0,
        j * a + j + rm,
        j * a + j - rm,
        j * a - j + rp,
        j * a - j - rp,
        -j * a - j + rm,
        -j * a - j - rm,
        -j * a + j + rp,
        -j * a + j - rp,
    ]
}

/// `min ω^{(9-16)}`: the special-momentum contribution to the periodic ground energy.
pub fn special_point_minimum(params: &ModelParams) -> (usize, f64) {
    let w = spectra_n4(params);
    (8..16)
        .map(|k| (k + 1, w[k]))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("eight branches")
}

/// Excitation gap `Δ = min_± {2J[(h/J)² + 1 ± 2α + α²]^{1/2} − 2J|α ± 1|}`.
///
/// Each branch is `ε^{(1)} − ε^{(3)}` at `p' = 0` or `π`, where the two
/// bands approach each other most closely.
pub fn energy_gap(params: &ModelParams) -> f64 {
    let (j, a) = (params.j, params.alpha);
    let hj2 = (params.h / j).powi(2);
    [1.0, -1.0]
        .into_iter()
        .map(|s: f64| {
            let r = (hj2 + 1.0 + 2.0 * s * a + a * a).max(0.0);
            2.0 * j * r.sqrt() - 2.0 * j * (a + s).abs()
        })
        .fold(f64::INFINITY, f64::min)
        .max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gap_examples() {
        assert!(energy_gap(&ModelParams::compass(1.0, 0.0, 4)) < 1e-15);
        assert!(energy_gap(&ModelParams::compass(-1.0, 0.0, 4)) < 1e-15);
        let g = energy_gap(&ModelParams::compass(1.0, 1.0, 4));
        assert!((g - (2.0 * 5f64.sqrt() - 4.0)).abs() < 1e-14);
        let g = energy_gap(&ModelParams::compass(0.0, 1.0, 4));
        assert!((g - 2.0 * (2f64.sqrt() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn gap_is_band_distance_minimum() {
        for &(a, h) in &[(1.0, 0.3), (0.4, 1.0), (-1.3, 0.2), (0.0, 0.7), (2.0, 0.05)] {
            let params = ModelParams::compass(a, h, 4).with_j(1.1);
            let n = 10_000;
            let mut best = f64::INFINITY;
            for k in 0..=n {
                let p = PI * k as f64 / n as f64;
                let (x, y) = radicands(&params, p);
                best = best.min(2.0 * params.j * (x.sqrt() - y.sqrt()));
            }
            assert!((energy_gap(&params) - best).abs() < 1e-8, "α={a} h={h}");
            assert!(energy_gap(&params) > 0.0);
        }
    }

    #[test]
    fn decoupled_dimers() {
        let params = ModelParams::compass(0.0, 0.0, 8);
        for p in momentum_grid(&params).unwrap().points {
            let s = spectrum_analytic(&params, p).unwrap();
            assert!((s.energy(1).unwrap() - 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn abc_branches_pair_up() {
        let params = ModelParams::compass(0.7, 1.1, 12);
        for p in momentum_grid(&params).unwrap().points {
            let s = spectrum_analytic(&params, p).unwrap();
            assert_eq!(s.energy(1), s.energy(2).map(|e| -e));
            assert_eq!(s.energy(3), s.energy(4).map(|e| -e));
        }
    }

    #[test]
    fn spec_example_branch() {
        let s = spectrum_analytic(&ModelParams::compass(1.0, 1.0, 2), Momentum::new(1, 2)).unwrap();
        assert!((s.energy(1).unwrap() - 2.0 * 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn zone_edge_closes_at_alpha_one() {
        let (x, y) = radicands(&ModelParams::compass(1.0, 0.0, 4), PI);
        assert!(x.abs() < 1e-15 && y.abs() < 1e-15);
    }

    #[test]
    fn pbc_has_eight_branches() {
        let params = ModelParams::compass(1.0, 0.5, 8).with_bc(Boundary::Pbc);
        let s = spectrum_analytic(&params, Momentum::new(2, 8)).unwrap();
        assert_eq!(s.branches.len(), 8);
        assert_eq!(s.parity, Parity::Odd);
    }

    #[test]
    fn n4_levels_trivial_point() {
        let w = spectra_n4(&ModelParams::compass(0.0, 0.0, 2));
        assert_eq!(&w[..8], &[2.0, -2.0, 2.0, -2.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn n4_traceless_at_zero_field() {
        for a in [-1.7, -0.2, 0.0, 0.9, 2.0] {
            let sum: f64 = spectra_n4(&ModelParams::compass(a, 0.0, 2)).iter().sum();
            assert!(sum.abs() < 1e-13);
        }
    }
}
