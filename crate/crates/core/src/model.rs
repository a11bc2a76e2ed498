//! Model parameters, momentum grids and boundary-condition bookkeeping.
//!
//! The chain has `N'` two-site cells (`N = 2N'` pseudospins). Cell `n`
//! carries sites `(1, n)` and `(2, n)`; flattened, site `(s, n)` becomes
//! `2(n-1) + s` (1-based) or `2n + s - 1` (0-based, used throughout the code).

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boundary condition of the fermionised chain.
///
/// The spin chain itself is always periodic. Antiperiodic fermions describe
/// its even `Π σ^z` sector, periodic fermions the odd sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Abc,
    Pbc,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Abc => f.write_str("ABC"),
            Boundary::Pbc => f.write_str("PBC"),
        }
    }
}

/// Couplings and size of the XX–YY chain in a transverse field.
///
/// ```text
/// H = -J Σ σ^x_{2,n} σ^x_{1,n+1}
///     - Jα Σ [(1-β) σ^x_{1,n} σ^x_{2,n} + β σ^y_{1,n} σ^y_{2,n}]
///     - h/2 Σ (σ^z_{1,n} + σ^z_{2,n})
/// ```
///
/// `β = 1` is the compass model, `α = 1` the XX–YY model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub j: f64,
    pub alpha: f64,
    pub beta: f64,
    pub h: f64,
    pub n_cells: usize,
    pub bc: Boundary,
}

impl ModelParams {
    /// Compass model (`J = 1`, `β = 1`) with antiperiodic fermions.
    pub fn compass(alpha: f64, h: f64, n_cells: usize) -> Self {
        ModelParams {
            j: 1.0,
            alpha,
            beta: 1.0,
            h,
            n_cells,
            bc: Boundary::Abc,
        }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        ModelParams { alpha, ..self }
    }

    pub fn with_h(self, h: f64) -> Self {
        ModelParams { h, ..self }
    }

    pub fn with_beta(self, beta: f64) -> Self {
        ModelParams { beta, ..self }
    }

    pub fn with_j(self, j: f64) -> Self {
        ModelParams { j, ..self }
    }

    pub fn with_cells(self, n_cells: usize) -> Self {
        ModelParams { n_cells, ..self }
    }

    pub fn with_bc(self, bc: Boundary) -> Self {
        ModelParams { bc, ..self }
    }

    /// Total number of pseudospin sites.
    pub fn n_sites(&self) -> usize {
        2 * self.n_cells
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_cells < 2 || !self.n_cells.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "n_cells must be a positive even integer >= 2, got {}",
                self.n_cells
            )));
        }
        if !(self.j.is_finite() && self.j > 0.0) {
            return Err(Error::InvalidParams(format!(
                "J must be finite and positive, got {}",
                self.j
            )));
        }
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("h", self.h)] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// A momentum `p = numer·π / denom`, kept as an exact rational multiple of π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Momentum {
    pub numer: u32,
    pub denom: u32,
}

impl Momentum {
    pub const ZERO: Momentum = Momentum { numer: 0, denom: 1 };
    pub const PI: Momentum = Momentum { numer: 1, denom: 1 };

    pub fn new(numer: u32, denom: u32) -> Self {
        assert!(denom > 0, "momentum denominator must be positive");
        Momentum { numer, denom }
    }

    pub fn value(&self) -> f64 {
        self.numer as f64 * PI / self.denom as f64
    }

    /// True for `p = 0` or `p = π`.
    pub fn is_special(&self) -> bool {
        self.numer == 0 || self.numer == self.denom
    }

    /// Same point on the circle, compared exactly.
    pub fn same_as(&self, other: &Momentum) -> bool {
        self.numer as u64 * other.denom as u64 == other.numer as u64 * self.denom as u64
    }
}

impl fmt::Display for Momentum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}π/{}", self.numer, self.denom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentumGrid {
    /// Nonspecial momenta in `(0, π)`, ascending.
    pub points: Vec<Momentum>,
    /// `{0, π}` for periodic fermions, empty otherwise.
    pub special_points: Vec<Momentum>,
}

impl MomentumGrid {
    pub fn contains(&self, p: &Momentum) -> bool {
        self.points.iter().any(|q| q.same_as(p))
    }
}

/// Positive momenta of the fermion problem.
///
/// ABC: `p' = jπ/N'` for odd `j < N'`. PBC: `p' = 2jπ/N'` for
/// `j = 1 … N'/2 - 1`, with `0` and `π` listed separately.
pub fn momentum_grid(params: &ModelParams) -> Result<MomentumGrid> {
    params.validate()?;
    let n = params.n_cells as u32;
    match params.bc {
        Boundary::Abc => Ok(MomentumGrid {
            points: (1..n).step_by(2).map(|j| Momentum::new(j, n)).collect(),
            special_points: Vec::new(),
        }),
        Boundary::Pbc => Ok(MomentumGrid {
            points: (1..n / 2).map(|j| Momentum::new(2 * j, n)).collect(),
            special_points: vec![Momentum::ZERO, Momentum::PI],
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abc_grid_n4() {
        let g = momentum_grid(&ModelParams::compass(1.0, 0.0, 4)).unwrap();
        let vals: Vec<f64> = g.points.iter().map(Momentum::value).collect();
        assert_eq!(vals.len(), 2);
        assert!((vals[0] - PI / 4.0).abs() < 1e-15);
        assert!((vals[1] - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!(g.special_points.is_empty());
    }

    #[test]
    fn pbc_grid_n4() {
        let p = ModelParams::compass(1.0, 0.0, 4).with_bc(Boundary::Pbc);
        let g = momentum_grid(&p).unwrap();
        assert_eq!(g.points.len(), 1);
        assert!((g.points[0].value() - PI / 2.0).abs() < 1e-15);
        assert_eq!(g.special_points, vec![Momentum::ZERO, Momentum::PI]);
    }

    #[test]
    fn smallest_grid() {
        let g = momentum_grid(&ModelParams::compass(1.0, 0.0, 2)).unwrap();
        assert_eq!(g.points, vec![Momentum::new(1, 2)]);
    }

    #[test]
    fn rejects_odd_or_tiny_sizes() {
        for n in [0, 1, 3, 7] {
            assert!(matches!(
                momentum_grid(&ModelParams::compass(1.0, 0.0, n)),
                Err(Error::InvalidParams(_))
            ));
        }
    }

    #[test]
    fn grid_counts() {
        for n in (2..=64).step_by(2) {
            let abc = momentum_grid(&ModelParams::compass(1.0, 0.0, n)).unwrap();
            assert_eq!(abc.points.len() + abc.special_points.len(), n / 2);
            let pbc = momentum_grid(&ModelParams::compass(1.0, 0.0, n).with_bc(Boundary::Pbc))
                .unwrap();
            assert_eq!(pbc.points.len() + pbc.special_points.len(), n / 2 + 1);
            for p in abc.points.iter().chain(pbc.points.iter()) {
                let v = p.value();
                assert!(v > 0.0 && v < PI);
            }
            assert!(abc.points.windows(2).all(|w| w[0].value() < w[1].value()));
        }
    }

    #[test]
    fn exact_momentum_comparison() {
        assert!(Momentum::new(2, 8).same_as(&Momentum::new(1, 4)));
        assert!(!Momentum::new(3, 8).same_as(&Momentum::new(1, 4)));
        assert!(Momentum::new(4, 4).is_special());
    }
}
