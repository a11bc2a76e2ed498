//! Spin operators as Majorana strings.
//!
//! With `K_l = Π_{j<l} (-i A_j B_j)`:
//! `σ^x_l = K_l A_l`, `σ^y_l = -K_l B_l`, `σ^z_l = i A_l B_l`.
//! A sorted product of `2k` distinct Majoranas has expectation `i^k Pf(Γ_sub)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::kernel::CorrelationKernel;
use super::majorana::MajoranaCorrelationMatrix;
use super::pfaffian::pfaffian;
use crate::ed::Pauli;
use crate::error::{Error, Result};
use crate::solver::GroundState;

/// `coefficient · c_{i_1} c_{i_2} …` with strictly increasing indices.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaString {
    pub coefficient: Complex64,
    pub indices: Vec<usize>,
}

impl MajoranaString {
    /// Normal-orders an arbitrary word using `{c_a, c_b} = 2δ_{ab}`.
    pub fn from_word(coefficient: Complex64, word: &[usize]) -> Self {
        let mut v = word.to_vec();
        let mut sign = 1.0;
        // Insertion sort; each transposition of distinct Majoranas flips the sign.
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        let mut indices = Vec::with_capacity(v.len());
        for c in v {
            if indices.last() == Some(&c) {
                indices.pop();
            } else {
                indices.push(c);
            }
        }
        MajoranaString {
            coefficient: coefficient * sign,
            indices,
        }
    }

    /// Product of Pauli operators on distinct sites (any order).
    pub fn from_paulis(ops: &[(usize, Pauli)]) -> Result<Self> {
        for (k, &(s, _)) in ops.iter().enumerate() {
            if ops[..k].iter().any(|&(t, _)| t == s) {
                return Err(Error::InvalidParams(format!("site {s} repeated")));
            }
        }
        let i = Complex64::i();
        let mut coefficient = Complex64::new(1.0, 0.0);
        let mut word = Vec::new();
        for &(l, p) in ops {
            let (a, b) = (2 * l, 2 * l + 1);
            let string = |word: &mut Vec<usize>, coef: &mut Complex64| {
                for j in 0..l {
                    *coef *= -i;
                    word.extend([2 * j, 2 * j + 1]);
                }
            };
            match p {
                Pauli::I => {}
                Pauli::X => {
                    string(&mut word, &mut coefficient);
                    word.push(a);
                }
                Pauli::Y => {
                    string(&mut word, &mut coefficient);
                    coefficient = -coefficient;
                    word.push(b);
                }
                Pauli::Z => {
                    coefficient *= i;
                    word.extend([a, b]);
                }
            }
        }
        Ok(Self::from_word(coefficient, &word))
    }

    /// Expectation value given `Γ` on a window containing every index.
    pub fn expectation(&self, gamma: &MajoranaCorrelationMatrix) -> Result<Complex64> {
        if self.indices.is_empty() {
            return Ok(self.coefficient);
        }
        if self.indices.len() % 2 == 1 {
            // Odd Majorana number: vanishes in a parity eigenstate.
            return Ok(Complex64::new(0.0, 0.0));
        }
        let offset = 2 * gamma.first_site;
        let local: Vec<usize> = self
            .indices
            .iter()
            .map(|&c| {
                c.checked_sub(offset)
                    .filter(|&x| x < gamma.gamma.nrows())
                    .ok_or_else(|| Error::OutOfRange(format!("Majorana {c} outside window")))
            })
            .collect::<Result<_>>()?;
        let k = local.len() / 2;
        let pf = pfaffian(&gamma.restrict(&local))?;
        Ok(self.coefficient * Complex64::i().powu(k as u32) * pf)
    }
}

/// Spin correlators evaluated from the fermionic two-point functions.
#[derive(Debug, Clone)]
pub struct SpinCorrelations {
    kernel: CorrelationKernel,
}

impl SpinCorrelations {
    pub fn new(gs: &GroundState) -> Result<Self> {
        Ok(SpinCorrelations {
            kernel: CorrelationKernel::new(gs)?,
        })
    }

    pub fn kernel(&self) -> &CorrelationKernel {
        &self.kernel
    }

    pub fn n_sites(&self) -> usize {
        self.kernel.n_sites()
    }

    /// `⟨Π P_k⟩` for Paulis on distinct flat 0-based sites.
    pub fn expectation(&self, ops: &[(usize, Pauli)]) -> Result<f64> {
        for &(s, _) in ops {
            if s >= self.n_sites() {
                return Err(Error::OutOfRange(format!(
                    "site {s} in a chain of {}",
                    self.n_sites()
                )));
            }
        }
        let string = MajoranaString::from_paulis(ops)?;
        let Some(&first) = string.indices.first() else {
            return Ok(string.coefficient.re);
        };
        let last = *string.indices.last().unwrap_or(&first);
        let lo = first / 2;
        let hi = last / 2;
        let gamma = MajoranaCorrelationMatrix::window(&self.kernel, lo, hi - lo + 1)?;
        let value = string.expectation(&gamma)?;
        let scale = value.norm().max(1.0);
        if value.im.abs() > 1e-9 * scale {
            return Err(Error::Numerical(format!(
                "Hermitian string has imaginary expectation {:.3e}",
                value.im
            )));
        }
        Ok(value.re)
    }

    /// `⟨σ^α_i σ^β_j⟩` for `α, β ∈ {I, x, y, z}` (row: site `i`).
    pub fn pauli_matrix(&self, i: usize, j: usize) -> Result<[[f64; 4]; 4]> {
        if i == j {
            return Err(Error::InvalidParams("pair needs distinct sites".into()));
        }
        const P: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        let mut out = [[0.0; 4]; 4];
        for (a, &pa) in P.iter().enumerate() {
            for (b, &pb) in P.iter().enumerate() {
                out[a][b] = self.expectation(&[(i, pa), (j, pb)])?;
            }
        }
        Ok(out)
    }

    /// Correlators of a site pair.
    pub fn two_site(&self, i: usize, j: usize) -> Result<TwoSiteCorrelators> {
        let p = self.pauli_matrix(i, j)?;
        Ok(TwoSiteCorrelators {
            sites: (i, j),
            xx: p[1][1],
            yy: p[2][2],
            zz: p[3][3],
            z_i: p[3][0],
            z_j: p[0][3],
        })
    }

    /// `⟨σ^x_{2,1} σ^x_{1,2+r}⟩`: flat sites 1 and `2r + 2`.
    pub fn string_xx(&self, r: usize) -> Result<f64> {
        let n_cells = self.kernel.n_cells;
        if r > n_cells / 2 {
            return Err(Error::OutOfRange(format!(
                "cell distance {r} exceeds N'/2 = {}",
                n_cells / 2
            )));
        }
        self.expectation(&[(1, Pauli::X), (2 * r + 2, Pauli::X)])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoSiteCorrelators {
    pub sites: (usize, usize),
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    pub z_i: f64,
    pub z_j: f64,
}

/// `⟨σ^x_{2,1} σ^x_{1,2+r}⟩` of an antiperiodic ground state.
pub fn string_correlator_xx(gs: &GroundState, r: usize) -> Result<f64> {
    SpinCorrelations::new(gs)?.string_xx(r)
}

/// The string correlator for several distances, evaluated concurrently.
pub fn string_correlators_xx(gs: &GroundState, rs: &[usize]) -> Result<Vec<f64>> {
    let sc = SpinCorrelations::new(gs)?;
    rs.par_iter().map(|&r| sc.string_xx(r)).collect()
}

/// `⟨σ^xσ^x⟩, ⟨σ^yσ^y⟩, ⟨σ^zσ^z⟩, ⟨σ^z_i⟩, ⟨σ^z_j⟩` for flat 0-based sites.
pub fn two_site_correlators(gs: &GroundState, pair: (usize, usize)) -> Result<TwoSiteCorrelators> {
    SpinCorrelations::new(gs)?.two_site(pair.0, pair.1)
}
