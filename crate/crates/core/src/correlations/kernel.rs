//! Translation-invariant fermion two-point functions.
//!
//! With `a_{s,n} = N'^{-1/2} Σ_k e^{-ikn} a_s(k)`,
//!
//! ```text
//! ⟨a†_{s,n} a_{t,n'}⟩  = N'^{-1} Σ_k e^{ik(n-n')} ⟨a_s†(k) a_t(k)⟩
//! ⟨a†_{s,n} a†_{t,n'}⟩ = N'^{-1} Σ_k e^{ik(n-n')} ⟨a_s†(k) a_t†(-k)⟩
//! ```
//!
//! where `k` runs over both `±p'` of every block.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::Boundary;
use crate::solver::block::Parity;
use crate::solver::fock::{FockOp, Ladder, Mode, Site, DIM};
use crate::solver::GroundState;

type Pair = [[Complex64; 2]; 2];

/// Quadratic expectations of one block at `q = +p'` (index 0) and `-p'` (1).
#[derive(Debug, Clone, Copy)]
pub struct BlockMoments {
    pub p: f64,
    /// `⟨a_s†(q) a_t(q)⟩`
    pub normal: [Pair; 2],
    /// `⟨a_s†(q) a_t†(-q)⟩`
    pub anomalous: [Pair; 2],
}

fn expectation(psi: &[Complex64; DIM], op: &FockOp) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..DIM {
        if psi[i].norm_sqr() == 0.0 {
            continue;
        }
        for j in 0..DIM {
            acc += psi[i].conj() * op[(i, j)] * psi[j];
        }
    }
    acc
}

/// Moments of an even-sector block vector.
pub fn block_moments(p: f64, vector: &[Complex64], ladder: &Ladder) -> BlockMoments {
    let mut psi = [Complex64::new(0.0, 0.0); DIM];
    for (k, s) in Parity::Even.basis().into_iter().enumerate() {
        psi[s] = vector[k];
    }
    let zero = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut normal = [zero; 2];
    let mut anomalous = [zero; 2];
    let sites = [Site::One, Site::Two];
    for (qi, positive) in [true, false].into_iter().enumerate() {
        for (si, &s) in sites.iter().enumerate() {
            for (ti, &t) in sites.iter().enumerate() {
                let ms = Mode::new(s, positive).index();
                let mt = Mode::new(t, positive);
                normal[qi][si][ti] =
                    expectation(&psi, &(ladder.create[ms] * ladder.destroy[mt.index()]));
                anomalous[qi][si][ti] =
                    expectation(&psi, &(ladder.create[ms] * ladder.create[mt.flipped().index()]));
            }
        }
    }
    BlockMoments {
        p,
        normal,
        anomalous,
    }
}

/// `f_{st}(d)` and `g_{st}(d)` for cell separations `|d| < N'`.
#[derive(Debug, Clone)]
pub struct CorrelationKernel {
    pub n_cells: usize,
    normal: Vec<Pair>,
    anomalous: Vec<Pair>,
}

impl CorrelationKernel {
    /// Requires antiperiodic fermions (the even σ^z-parity ground state).
    pub fn new(gs: &GroundState) -> Result<Self> {
        if gs.params.bc != Boundary::Abc {
            return Err(Error::RequiresAbc("real-space correlators"));
        }
        let ladder = Ladder::new();
        let moments: Vec<BlockMoments> = gs
            .per_block
            .par_iter()
            .map(|b| block_moments(b.momentum.value(), &b.vector, &ladder))
            .collect();
        let n = gs.params.n_cells;
        let norm = 1.0 / n as f64;
        let offsets: Vec<i64> = (-(n as i64 - 1)..n as i64).collect();
        let (normal, anomalous): (Vec<Pair>, Vec<Pair>) = offsets
            .par_iter()
            .map(|&d| {
                let zero = [[Complex64::new(0.0, 0.0); 2]; 2];
                let (mut f, mut g) = (zero, zero);
                // Blocks are summed in ascending p' for a reproducible result.
                for m in &moments {
                    for (qi, q) in [m.p, -m.p].into_iter().enumerate() {
                        let phase = Complex64::from_polar(norm, q * d as f64);
                        for s in 0..2 {
                            for t in 0..2 {
                                f[s][t] += phase * m.normal[qi][s][t];
                                g[s][t] += phase * m.anomalous[qi][s][t];
                            }
                        }
                    }
                }
                (f, g)
            })
            .unzip();
        Ok(CorrelationKernel {
            n_cells: n,
            normal,
            anomalous,
        })
    }

    fn slot(&self, m: usize, n: usize) -> (usize, usize, usize) {
        let d = (m / 2) as i64 - (n / 2) as i64;
        ((d + self.n_cells as i64 - 1) as usize, m % 2, n % 2)
    }

    /// `⟨a_m† a_n⟩` for flat 0-based sites.
    pub fn f(&self, m: usize, n: usize) -> Complex64 {
        let (k, s, t) = self.slot(m, n);
        self.normal[k][s][t]
    }

    /// `⟨a_m† a_n†⟩` for flat 0-based sites.
    pub fn g(&self, m: usize, n: usize) -> Complex64 {
        let (k, s, t) = self.slot(m, n);
        self.anomalous[k][s][t]
    }

    pub fn n_sites(&self) -> usize {
        2 * self.n_cells
    }
}
