//! Ground states assembled block by block.
//!
//! At `h = 0` every block has an exactly degenerate lowest pair (the two
//! quasiparticle bands touch, `λ^{(2)} = λ^{(4)}`), so "the" ground vector
//! is a choice. It is fixed by degenerate perturbation theory along a
//! physical direction — by default the transverse field, i.e. the `h → 0⁺`
//! limit of the ground branch — and every such block is flagged.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::block::{beta_derivative, block_unchecked, field_derivative, Parity};
use super::eigen::{fix_phase, hermitian_eigensystem};
use super::fock::{FockOp, Ladder, Mode, Site};
use crate::error::Result;
use crate::model::{momentum_grid, Boundary, ModelParams, Momentum};

/// Eigenvalues closer than this (times `max(1, ‖W‖)`) count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Direction used to resolve degenerate ground blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftDirection {
    /// Perturb along the field, towards the sign of `h` (`h → 0⁺` at `h = 0`).
    #[default]
    Field,
    /// Perturb along `β` towards smaller values (`β → 1⁻`).
    BetaBelow,
    /// Perturb along `β` towards larger values.
    BetaAbove,
}

/// How the ground vector of a block was selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selection {
    /// Nondegenerate lowest eigenvalue.
    Unique,
    /// Degeneracy resolved at first order in the lifting direction.
    FirstOrder,
    /// Degeneracy resolved at second order.
    SecondOrder,
    /// Unresolved; the lowest-index eigenvector was taken.
    LowestIndex,
}

impl Selection {
    pub fn is_degenerate(self) -> bool {
        self != Selection::Unique
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockGround {
    pub momentum: Momentum,
    /// Lowest block eigenvalue `λ_min(p')`.
    pub energy: f64,
    /// Normalised, phase-fixed amplitudes in the even-sector basis.
    #[serde(skip)]
    pub vector: Vec<Complex64>,
    pub selection: Selection,
}

/// Lowest odd-parity state of the `p' ∈ {0, π}` modes (periodic fermions).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialPointState {
    /// Contribution to `E_G`, equal to `min ω^{(9-16)}` for the compass chain.
    pub energy: f64,
    #[serde(skip)]
    pub vector: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundState {
    pub params: ModelParams,
    /// Per-momentum ground data, ascending in `p'`.
    pub per_block: Vec<BlockGround>,
    pub special: Option<SpecialPointState>,
    pub energy: f64,
    pub lift: LiftDirection,
}

impl GroundState {
    pub fn degenerate_blocks(&self) -> usize {
        self.per_block
            .iter()
            .filter(|b| b.selection.is_degenerate())
            .count()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate_blocks() > 0
    }

    pub fn block(&self, p: &Momentum) -> Option<&BlockGround> {
        self.per_block.iter().find(|b| b.momentum.same_as(p))
    }
}

pub fn ground_state(params: &ModelParams) -> Result<GroundState> {
    ground_state_with(params, LiftDirection::Field)
}

pub fn ground_state_with(params: &ModelParams, lift: LiftDirection) -> Result<GroundState> {
    let grid = momentum_grid(params)?;
    let per_block = grid
        .points
        .par_iter()
        .map(|&p| block_ground(params, p, lift))
        .collect::<Result<Vec<_>>>()?;
    let special = match params.bc {
        Boundary::Abc => None,
        Boundary::Pbc => Some(special_point_state(params)?),
    };
    // Each block carries the 2h of constant energy belonging to its two cells.
    let mut energy = 0.0;
    for b in &per_block {
        energy += b.energy + 2.0 * params.h;
    }
    if let Some(s) = &special {
        energy += s.energy;
    }
    Ok(GroundState {
        params: *params,
        per_block,
        special,
        energy,
        lift,
    })
}

fn lift_operator(
    params: &ModelParams,
    p: f64,
    lift: LiftDirection,
) -> DMatrix<Complex64> {
    match lift {
        LiftDirection::Field => {
            let v = field_derivative(Parity::Even);
            if params.h < 0.0 {
                -v
            } else {
                v
            }
        }
        LiftDirection::BetaBelow => -beta_derivative(params, p, Parity::Even),
        LiftDirection::BetaAbove => beta_derivative(params, p, Parity::Even),
    }
}

/// Ground vector of one even-parity block.
pub fn block_ground(params: &ModelParams, p: Momentum, lift: LiftDirection) -> Result<BlockGround> {
    let w = block_unchecked(params, p, Parity::Even).matrix;
    let (energy, vector, selection) = match lift {
        LiftDirection::Field => field_resolved(&w, params.h)?,
        _ => lowest_lifted(&w, || lift_operator(params, p.value(), lift))?,
    };
    Ok(BlockGround {
        momentum: p,
        energy,
        vector,
        selection,
    })
}

/// Splittings below this (times `max(1, ‖W‖)`) are resolved analytically in `h`.
pub const NEAR_DEGENERACY: f64 = 1e-6;

/// Ground vector of `W(h) = W(0) - hN̂` that stays accurate as the lowest
/// pair merges (`λ^{(4)} - λ^{(2)} ~ h²`).
///
/// For a small splitting the eigensolver cannot separate the pair, so the
/// state is rebuilt from the exactly degenerate lowest subspace `P` of
/// `W(0)`: with `V = ∂W/∂h`, the `P` component `c` of the eigenvector with
/// eigenvalue `E` solves the exact Schur-complement problem
///
/// ```text
/// [A + h B(E)] c = ((E - e₀)/h) c,   A = P†VP,   B(E) = P†VQ (E - Q†WQ)⁻¹ Q†VP
/// ```
///
/// and the `Q` component is `h (E - Q†WQ)⁻¹ Q†VP c`. When `A` is a multiple
/// of the identity its contribution is removed exactly and `B` decides. At
/// `h = 0` this is degenerate perturbation theory, approached from `h > 0`.
pub fn field_resolved(w: &DMatrix<Complex64>, h: f64) -> Result<(f64, Vec<Complex64>, Selection)> {
    let scale = w.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
    let es = hermitian_eigensystem(w)?;
    if es.values[1] - es.values[0] > NEAR_DEGENERACY * scale {
        return Ok((es.values[0], es.vector(0), Selection::Unique));
    }
    let n = w.nrows();
    let v = field_derivative(Parity::Even);
    let w0 = w - &v * Complex64::new(h, 0.0);
    let es0 = hermitian_eigensystem(&w0)?;
    let k = lowest_cluster(&es0.values, DEGENERACY_TOL * scale);
    if k == 1 {
        // The near-degeneracy is not caused by the field; nothing to exploit.
        let degenerate = es.values[1] - es.values[0] <= DEGENERACY_TOL * scale;
        let sel = if degenerate { Selection::LowestIndex } else { Selection::Unique };
        return Ok((es.values[0], es.vector(0), sel));
    }
    let e = es.values[0];
    let p = columns(&es0.vectors, 0..k);
    let q = columns(&es0.vectors, k..n);
    let wqq = q.adjoint() * w * &q;
    let resolvent = (DMatrix::<Complex64>::identity(n - k, n - k) * Complex64::new(e, 0.0) - wqq)
        .try_inverse()
        .ok_or_else(|| crate::Error::Numerical("singular resolvent in block ground state".into()))?;
    let vqp = q.adjoint() * &v * &p;
    let a = hermitize(p.adjoint() * &v * &p);
    let b = hermitize(vqp.adjoint() * &resolvent * &vqp);

    let a_eig = hermitian_eigensystem(&a)?;
    let spread = a_eig.values[k - 1] - a_eig.values[0];
    let a_scalar = spread <= 1e-9 * a_eig.values.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let (c, order) = if a_scalar {
        // E - e₀ = a h + μ h² + …: the ground state minimises μ for either sign of h.
        let m = hermitian_eigensystem(&b)?;
        (m.vectors.column(0).into_owned(), Selection::SecondOrder)
    } else {
        let m = hermitian_eigensystem(&(&a + &b * Complex64::new(h, 0.0)))?;
        // E - e₀ = h m: lowest m for h ≥ 0, highest for h < 0.
        let idx = if h < 0.0 { k - 1 } else { 0 };
        (m.vectors.column(idx).into_owned(), Selection::FirstOrder)
    };
    let psi = &p * &c + &q * (&resolvent * (&vqp * &c)) * Complex64::new(h, 0.0);
    let selection = if h == 0.0 { order } else { Selection::Unique };
    Ok((e, finish(psi), selection))
}

fn lowest_cluster(values: &[f64], tol: f64) -> usize {
    values.iter().take_while(|&&v| v - values[0] <= tol).count()
}

fn columns(m: &DMatrix<Complex64>, idx: std::ops::Range<usize>) -> DMatrix<Complex64> {
    m.columns(idx.start, idx.len()).into_owned()
}

/// Lowest eigenpair of `w`, resolving a degenerate minimum with the
/// perturbation `v` at first and, if needed, second order.
pub fn lowest_lifted(
    w: &DMatrix<Complex64>,
    v: impl FnOnce() -> DMatrix<Complex64>,
) -> Result<(f64, Vec<Complex64>, Selection)> {
    let scale = w.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
    let tol = DEGENERACY_TOL * scale;
    let es = hermitian_eigensystem(w)?;
    let n = w.nrows();
    let k = lowest_cluster(&es.values, tol);
    let e0 = es.values[0];
    if k == 1 {
        return Ok((e0, es.vector(0), Selection::Unique));
    }

    let v = v();
    let p = columns(&es.vectors, 0..k);
    let vscale = v.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
    let first = hermitian_eigensystem(&hermitize(p.adjoint() * &v * &p))?;
    let k1 = lowest_cluster(&first.values, DEGENERACY_TOL * vscale);
    if k1 == 1 {
        return Ok((e0, finish(&p * first.vectors.column(0)), Selection::FirstOrder));
    }

    let p2 = &p * columns(&first.vectors, 0..k1);
    let q = columns(&es.vectors, k..n);
    let denom = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n - k,
        es.values[k..].iter().map(|&e| Complex64::new(1.0 / (e0 - e), 0.0)),
    ));
    let vq = q.adjoint() * &v * &p2;
    let second = hermitian_eigensystem(&hermitize(vq.adjoint() * denom * vq))?;
    let k2 = lowest_cluster(&second.values, DEGENERACY_TOL * vscale * vscale);
    let chosen = &p2 * second.vectors.column(0);
    let selection = if k2 == 1 {
        Selection::SecondOrder
    } else {
        Selection::LowestIndex
    };
    Ok((e0, finish(chosen), selection))
}

fn hermitize(m: DMatrix<Complex64>) -> DMatrix<Complex64> {
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn finish(col: nalgebra::DVector<Complex64>) -> Vec<Complex64> {
    let norm = col.norm();
    let mut v: Vec<Complex64> = col.iter().map(|z| z / norm).collect();
    fix_phase(&mut v);
    v
}

/// Four-mode Fock Hamiltonian of the `p ∈ {0, π}` modes
/// `{a₁(0), a₂(0), a₁(π), a₂(π)}`, without the constant.
pub fn special_fock_hamiltonian(params: &ModelParams) -> FockOp {
    let l = Ladder::new();
    let (j, ja, beta) = (params.j, params.j * params.alpha, params.beta);
    // (coef, left site, left (u, v), right site, right (u, v), shift)
    let bonds = [
        (-j, Site::Two, (1.0, -1.0), Site::One, (1.0, 1.0), 1.0),
        (-ja * (1.0 - beta), Site::One, (1.0, -1.0), Site::Two, (1.0, 1.0), 0.0),
        (ja * beta, Site::One, (1.0, 1.0), Site::Two, (1.0, -1.0), 0.0),
    ];
    let mut w = FockOp::zeros();
    // Mode index reuse: "positive" = p = 0, "negative" = p = π.
    for (coef, ls, (u, v), rs, (u2, v2), d) in bonds {
        for zero in [true, false] {
            let q: f64 = if zero { 0.0 } else { std::f64::consts::PI };
            let c = Complex64::new(coef * (q * d).cos(), 0.0);
            let s = Mode::new(ls, zero).index();
            let t = Mode::new(rs, zero).index();
            w += l.create[s] * l.create[t] * (c * (u * u2));
            w += l.create[s] * l.destroy[t] * (c * (u * v2));
            w += l.destroy[s] * l.create[t] * (c * (v * u2));
            w += l.destroy[s] * l.destroy[t] * (c * (v * v2));
        }
    }
    w - l.total_number() * Complex64::new(params.h, 0.0)
}

/// Lowest odd-parity state of the special modes, including their `2h` constant.
pub fn special_point_state(params: &ModelParams) -> Result<SpecialPointState> {
    let w = super::block::project(&special_fock_hamiltonian(params), Parity::Odd);
    let es = hermitian_eigensystem(&w)?;
    Ok(SpecialPointState {
        energy: es.values[0] + 2.0 * params.h,
        vector: es.vector(0),
    })
}

/// `E_G` from the closed form: `-Σ 2J√X` over the grid, plus `min ω^{(9-16)}`
/// for periodic fermions (compass coupling).
pub fn ground_energy_analytic(params: &ModelParams) -> Result<f64> {
    let grid = momentum_grid(params)?;
    let mut e = 0.0;
    for p in &grid.points {
        let (x, _) = super::spectrum::radicands(params, p.value());
        e -= 2.0 * params.j * x.sqrt();
    }
    if params.bc == Boundary::Pbc {
        e += super::spectrum::special_point_minimum(params).1;
    }
    Ok(e)
}
