//! Momentum-space block Hamiltonians `W(p')`.
//!
//! Fourier convention: `a_{s,n} = N'^{-1/2} Σ_k e^{-ikn} a_s(k)`. A bond
//! `(u a† + v a)_{s,n} (u' a† + v' a)_{t,n+d}` summed over cells contributes,
//! for each `q = ±p'`,
//!
//! ```text
//! u u'  e^{-iqd} a_s†(q) a_t†(-q)     u v'  e^{-iqd} a_s†(q) a_t(q)
//! v u'  e^{+iqd} a_s(q)  a_t†(q)      v v'  e^{+iqd} a_s(q)  a_t(-q)
//! ```
//!
//! With `σ^x = a† + a` and `σ^y σ^y = -(a†+a)(a†-a)` on neighbouring sites,
//! the whole block is assembled in the 16-dimensional Fock space of the four
//! modes and then projected onto a parity sector.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fock::{occupation, state_label, FockOp, Ladder, Mode, Site, DIM};
use crate::error::{Error, Result};
use crate::model::{momentum_grid, ModelParams, Momentum};

/// Fermion-number parity of a block sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Fock codes of the sector, ascending (lexicographic in occupations).
    pub fn basis(self) -> Vec<usize> {
        let want = match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        (0..DIM).filter(|&s| occupation(s) % 2 == want).collect()
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// `u a† + v a` on one site of a bond.
#[derive(Debug, Clone, Copy)]
struct Leg {
    site: Site,
    u: f64,
    v: f64,
}

const X: (f64, f64) = (1.0, 1.0);
const XBAR: (f64, f64) = (1.0, -1.0);

/// `coef · left_{n} · right_{n+shift}` summed over cells.
#[derive(Debug, Clone, Copy)]
struct Bond {
    coef: f64,
    left: Leg,
    right: Leg,
    shift: i32,
}

fn leg(site: Site, (u, v): (f64, f64)) -> Leg {
    Leg { site, u, v }
}

fn bonds(params: &ModelParams) -> [Bond; 3] {
    let j = params.j;
    let ja = params.j * params.alpha;
    [
        // σ^x_{2,n} σ^x_{1,n+1} = (a†-a)_{2,n} (a†+a)_{1,n+1}
        Bond {
            coef: -j,
            left: leg(Site::Two, XBAR),
            right: leg(Site::One, X),
            shift: 1,
        },
        // σ^x_{1,n} σ^x_{2,n}
        Bond {
            coef: -ja * (1.0 - params.beta),
            left: leg(Site::One, XBAR),
            right: leg(Site::Two, X),
            shift: 0,
        },
        // σ^y_{1,n} σ^y_{2,n} = -(a†+a)_{1,n} (a†-a)_{2,n}
        Bond {
            coef: ja * params.beta,
            left: leg(Site::One, X),
            right: leg(Site::Two, XBAR),
            shift: 0,
        },
    ]
}

/// The full 16×16 `W(p')` on the four-mode Fock space, without the `hN'`
/// constant. `p` need not lie on any grid.
pub fn fock_hamiltonian(params: &ModelParams, p: f64) -> FockOp {
    let l = Ladder::new();
    let mut w = FockOp::zeros();
    for b in bonds(params) {
        if b.coef == 0.0 {
            continue;
        }
        for positive in [true, false] {
            let q = if positive { p } else { -p };
            let phase = Complex64::from_polar(1.0, -q * b.shift as f64);
            let s = Mode::new(b.left.site, positive);
            let t = Mode::new(b.right.site, positive);
            let (sq, tq, tmq) = (s.index(), t.index(), t.flipped().index());
            let c = Complex64::new(b.coef, 0.0);
            w += l.create[sq] * l.create[tmq] * (c * phase * (b.left.u * b.right.u));
            w += l.create[sq] * l.destroy[tq] * (c * phase * (b.left.u * b.right.v));
            w += l.destroy[sq] * l.create[tq] * (c * phase.conj() * (b.left.v * b.right.u));
            w += l.destroy[sq] * l.destroy[tmq] * (c * phase.conj() * (b.left.v * b.right.v));
        }
    }
    w - l.total_number() * Complex64::new(params.h, 0.0)
}

/// Restriction of a Fock operator to a parity sector, in [`Parity::basis`] order.
pub fn project(op: &FockOp, parity: Parity) -> DMatrix<Complex64> {
    let basis = parity.basis();
    DMatrix::from_fn(basis.len(), basis.len(), |i, j| op[(basis[i], basis[j])])
}

/// An 8×8 sector of `W(p')`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockHamiltonian {
    pub momentum: Momentum,
    pub parity: Parity,
    #[serde(skip)]
    pub matrix: DMatrix<Complex64>,
    /// Occupations `(n₁(p'), n₂(p'), n₁(-p'), n₂(-p'))` of each basis state.
    pub basis_labels: Vec<String>,
}

/// Build the block at a grid momentum; `0` and `π` have no 8×8 block.
pub fn block_hamiltonian(
    params: &ModelParams,
    p: Momentum,
    parity: Parity,
) -> Result<BlockHamiltonian> {
    if p.is_special() {
        return Err(Error::SpecialMomentum(p.to_string()));
    }
    if !momentum_grid(params)?.contains(&p) {
        return Err(Error::OffGrid {
            momentum: p.to_string(),
            bc: params.bc.to_string(),
            n_cells: params.n_cells,
        });
    }
    Ok(block_unchecked(params, p, parity))
}

pub(crate) fn block_unchecked(params: &ModelParams, p: Momentum, parity: Parity) -> BlockHamiltonian {
    let matrix = project(&fock_hamiltonian(params, p.value()), parity);
    BlockHamiltonian {
        momentum: p,
        parity,
        matrix,
        basis_labels: parity.basis().into_iter().map(state_label).collect(),
    }
}

/// `∂W/∂h = -N̂` restricted to a sector.
pub fn field_derivative(parity: Parity) -> DMatrix<Complex64> {
    project(&(-Ladder::new().total_number()), parity)
}

/// `∂W/∂β` restricted to a sector (`W` is affine in β).
pub fn beta_derivative(params: &ModelParams, p: f64, parity: Parity) -> DMatrix<Complex64> {
    let w1 = fock_hamiltonian(&params.with_beta(1.0), p);
    let w0 = fock_hamiltonian(&params.with_beta(0.0), p);
    project(&(w1 - w0), parity)
}
