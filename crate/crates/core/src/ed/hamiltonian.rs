//! Spin Hamiltonians in the σ^z product basis.
//!
//! Basis state `b` has site `l` (0-based, site `(s, n)` ↦ `2n + s - 1`) up
//! when bit `l` of `b` is set. Every term used here has real matrix
//! elements, so states are real vectors.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Largest chain handled by the oracle.
pub const MAX_SITES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term {
    /// `c σ^x_i σ^x_j`
    XX(usize, usize, f64),
    /// `c σ^y_i σ^y_j`
    YY(usize, usize, f64),
    /// `c σ^z_i`
    Z(usize, f64),
}

/// `σ^z` parity sector of a state space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Full,
    /// `Π σ^z = +1`; antiperiodic fermions.
    Even,
    /// `Π σ^z = -1`; periodic fermions.
    Odd,
}

#[derive(Debug, Clone)]
pub struct SpinHamiltonian {
    pub n_sites: usize,
    pub terms: Vec<Term>,
}

/// `Π σ^z` of a basis state: `+1` for an even number of down spins.
pub fn parity_of(state: usize, n_sites: usize) -> i8 {
    let down = n_sites as u32 - (state as u32).count_ones();
    if down.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl SpinHamiltonian {
    /// Periodic XX–YY chain:
    /// `-J Σ σ^x_{2,n}σ^x_{1,n+1} - Jα Σ [(1-β) σ^x_{1,n}σ^x_{2,n} + β σ^y_{1,n}σ^y_{2,n}] - h/2 Σ σ^z`.
    pub fn compass(params: &ModelParams) -> Result<Self> {
        let n = check_size(params)?;
        let (j, ja, beta) = (params.j, params.j * params.alpha, params.beta);
        let mut terms = Vec::new();
        for cell in 0..params.n_cells {
            let (s1, s2) = (2 * cell, 2 * cell + 1);
            terms.push(Term::XX(s2, (s2 + 1) % n, -j));
            if beta != 1.0 {
                terms.push(Term::XX(s1, s2, -ja * (1.0 - beta)));
            }
            if beta != 0.0 {
                terms.push(Term::YY(s1, s2, -ja * beta));
            }
        }
        terms.extend((0..n).map(|l| Term::Z(l, -params.h / 2.0)));
        Ok(SpinHamiltonian { n_sites: n, terms })
    }

    /// Periodic transverse-field Ising chain
    /// `-J Σ σ^x_l σ^x_{l+1} + h/2 Σ σ^z_l` (α and β ignored).
    pub fn ising(params: &ModelParams) -> Result<Self> {
        let n = check_size(params)?;
        let mut terms: Vec<Term> = (0..n).map(|l| Term::XX(l, (l + 1) % n, -params.j)).collect();
        terms.extend((0..n).map(|l| Term::Z(l, params.h / 2.0)));
        Ok(SpinHamiltonian { n_sites: n, terms })
    }

    pub fn dimension(&self) -> usize {
        1 << self.n_sites
    }

    /// `(H|b⟩)` as a list of `(b', amplitude)`.
    fn connections(&self, b: usize, mut f: impl FnMut(usize, f64)) {
        let mut diag = 0.0;
        for t in &self.terms {
            match *t {
                Term::XX(i, j, c) => f(b ^ (1 << i) ^ (1 << j), c),
                Term::YY(i, j, c) => {
                    let same = ((b >> i) & 1) == ((b >> j) & 1);
                    f(b ^ (1 << i) ^ (1 << j), if same { -c } else { c });
                }
                Term::Z(i, c) => diag += if (b >> i) & 1 == 1 { c } else { -c },
            }
        }
        f(b, diag);
    }

    /// `y = H x` on the full space.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.dimension());
        assert_eq!(y.len(), self.dimension());
        y.par_iter_mut().enumerate().for_each(|(b, out)| {
            // H is real symmetric, so (Hx)_b = Σ_{b'} H_{b b'} x_{b'} = Σ H_{b' b} x_{b'}.
            let mut acc = 0.0;
            self.connections(b, |b2, amp| acc += amp * x[b2]);
            *out = acc;
        });
    }
}

fn check_size(params: &ModelParams) -> Result<usize> {
    params.validate()?;
    let n = params.n_sites();
    if n > MAX_SITES {
        return Err(Error::SizeLimit {
            limit: MAX_SITES,
            requested: n,
        });
    }
    Ok(n)
}

/// Basis states of a sector with the inverse lookup table.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    pub states: Vec<usize>,
    index: Vec<u32>,
}

impl SectorBasis {
    pub fn new(n_sites: usize, sector: Sector) -> Self {
        let dim = 1usize << n_sites;
        let keep = |b: usize| match sector {
            Sector::Full => true,
            Sector::Even => parity_of(b, n_sites) == 1,
            Sector::Odd => parity_of(b, n_sites) == -1,
        };
        let states: Vec<usize> = (0..dim).filter(|&b| keep(b)).collect();
        let mut index = vec![u32::MAX; dim];
        for (k, &b) in states.iter().enumerate() {
            index[b] = k as u32;
        }
        SectorBasis { states, index }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn position(&self, b: usize) -> Option<usize> {
        match self.index[b] {
            u32::MAX => None,
            k => Some(k as usize),
        }
    }

    /// Embed sector amplitudes into the full space.
    pub fn embed(&self, v: &[f64], n_sites: usize) -> Vec<f64> {
        let mut full = vec![0.0; 1 << n_sites];
        for (k, &b) in self.states.iter().enumerate() {
            full[b] = v[k];
        }
        full
    }
}

/// The Hamiltonian restricted to a sector.
pub struct SectorOperator<'a> {
    pub ham: &'a SpinHamiltonian,
    pub basis: SectorBasis,
}

impl<'a> SectorOperator<'a> {
    pub fn new(ham: &'a SpinHamiltonian, sector: Sector) -> Self {
        SectorOperator {
            ham,
            basis: SectorBasis::new(ham.n_sites, sector),
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let basis = &self.basis;
        y.par_iter_mut().enumerate().for_each(|(k, out)| {
            let mut acc = 0.0;
            self.ham.connections(basis.states[k], |b2, amp| {
                // All terms conserve Π σ^z, so b2 stays in the sector.
                if let Some(k2) = basis.position(b2) {
                    acc += amp * x[k2];
                }
            });
            *out = acc;
        });
    }

    pub fn dense(&self) -> DMatrix<f64> {
        let d = self.dimension();
        let mut m = DMatrix::zeros(d, d);
        for (k, &b) in self.basis.states.iter().enumerate() {
            self.ham.connections(b, |b2, amp| {
                if let Some(k2) = self.basis.position(b2) {
                    m[(k2, k)] += amp;
                }
            });
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hermitian_action() {
        let params = ModelParams::compass(0.7, 0.4, 4).with_beta(0.6);
        let h = SpinHamiltonian::compass(&params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d = h.dimension();
        let u: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (mut hu, mut hv) = (vec![0.0; d], vec![0.0; d]);
        h.apply(&u, &mut hu);
        h.apply(&v, &mut hv);
        let a: f64 = u.iter().zip(&hv).map(|(x, y)| x * y).sum();
        let b: f64 = hu.iter().zip(&v).map(|(x, y)| x * y).sum();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn yy_sign_rule() {
        // σ^yσ^y|↑↑⟩ = -|↓↓⟩, σ^yσ^y|↑↓⟩ = |↓↑⟩.
        let h = SpinHamiltonian {
            n_sites: 2,
            terms: vec![Term::YY(0, 1, 1.0)],
        };
        let mut out = Vec::new();
        h.connections(0b11, |b, a| out.push((b, a)));
        assert!(out.contains(&(0b00, -1.0)));
        out.clear();
        h.connections(0b01, |b, a| out.push((b, a)));
        assert!(out.contains(&(0b10, 1.0)));
    }

    #[test]
    fn sectors_partition_the_space() {
        let e = SectorBasis::new(6, Sector::Even);
        let o = SectorBasis::new(6, Sector::Odd);
        assert_eq!(e.len() + o.len(), 64);
        assert_eq!(e.len(), 32);
        assert!(e.position(0b111111).is_some());
        assert!(o.position(0b111110).is_some());
    }

    #[test]
    fn size_limit() {
        let params = ModelParams::compass(1.0, 0.0, 10);
        assert!(matches!(
            SpinHamiltonian::compass(&params),
            Err(Error::SizeLimit { limit: 16, requested: 20 })
        ));
    }

    #[test]
    fn sector_dense_matches_apply() {
        let params = ModelParams::compass(1.3, 0.9, 3 * 2);
        let h = SpinHamiltonian::compass(&params).unwrap();
        let op = SectorOperator::new(&h, Sector::Odd);
        let m = op.dense();
        let d = op.dimension();
        let x: Vec<f64> = (0..d).map(|k| (k as f64 * 0.37).sin()).collect();
        let mut y = vec![0.0; d];
        op.apply(&x, &mut y);
        let y2 = &m * nalgebra::DVector::from_vec(x);
        assert!(y.iter().zip(y2.iter()).all(|(a, b)| (a - b).abs() < 1e-12));
        assert!((&m - m.transpose()).amax() < 1e-15);
    }
}
