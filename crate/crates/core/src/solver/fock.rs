//! Second quantisation on the four fermion modes `{a₁(p'), a₂(p'), a₁(-p'), a₂(-p')}`.
//!
//! Occupation of mode `k` is stored in bit `3 - k`, so ordering basis states
//! by their integer code orders them lexicographically in the occupation
//! tuple `(n₁(p'), n₂(p'), n₁(-p'), n₂(-p'))`. Creation operators act with
//! the Jordan–Wigner sign `(-1)^{# occupied modes before k}`.

use nalgebra::SMatrix;
use num_complex::Complex64;

pub const N_MODES: usize = 4;
pub const DIM: usize = 1 << N_MODES;

pub type FockOp = SMatrix<Complex64, DIM, DIM>;

/// Pseudospin site inside a unit cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    One,
    Two,
}

impl Site {
    pub fn index(self) -> usize {
        match self {
            Site::One => 0,
            Site::Two => 1,
        }
    }
}

/// One of the four block modes: site and sign of the momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mode {
    pub site: Site,
    pub positive: bool,
}

impl Mode {
    pub fn new(site: Site, positive: bool) -> Self {
        Mode { site, positive }
    }

    pub fn index(self) -> usize {
        self.site.index() + if self.positive { 0 } else { 2 }
    }

    /// Same site at the opposite momentum.
    pub fn flipped(self) -> Self {
        Mode {
            positive: !self.positive,
            ..self
        }
    }

    pub fn all() -> [Mode; N_MODES] {
        [
            Mode::new(Site::One, true),
            Mode::new(Site::Two, true),
            Mode::new(Site::One, false),
            Mode::new(Site::Two, false),
        ]
    }
}

fn bit(mode: usize) -> usize {
    1 << (N_MODES - 1 - mode)
}

/// Occupation number of `mode` in basis state `state`.
pub fn occupied(state: usize, mode: usize) -> bool {
    state & bit(mode) != 0
}

pub fn occupation(state: usize) -> u32 {
    (state as u32).count_ones()
}

pub fn creation(mode: usize) -> FockOp {
    let mut op = FockOp::zeros();
    for s in 0..DIM {
        if occupied(s, mode) {
            continue;
        }
        let before = (0..mode).filter(|&k| occupied(s, k)).count();
        let sign = if before % 2 == 0 { 1.0 } else { -1.0 };
        op[(s | bit(mode), s)] = Complex64::new(sign, 0.0);
    }
    op
}

pub fn annihilation(mode: usize) -> FockOp {
    creation(mode).adjoint()
}

/// Cached ladder operators for all four modes.
pub struct Ladder {
    pub create: [FockOp; N_MODES],
    pub destroy: [FockOp; N_MODES],
}

impl Ladder {
    pub fn new() -> Self {
        let create = [creation(0), creation(1), creation(2), creation(3)];
        let destroy = create.map(|c| c.adjoint());
        Ladder { create, destroy }
    }

    pub fn number(&self, mode: usize) -> FockOp {
        self.create[mode] * self.destroy[mode]
    }

    pub fn total_number(&self) -> FockOp {
        (0..N_MODES).fold(FockOp::zeros(), |acc, k| acc + self.number(k))
    }
}

impl Default for Ladder {
    fn default() -> Self {
        Self::new()
    }
}

/// Label such as `|1010⟩` listing `(n₁(p'), n₂(p'), n₁(-p'), n₂(-p'))`.
pub fn state_label(state: usize) -> String {
    let digits: String = (0..N_MODES)
        .map(|k| if occupied(state, k) { '1' } else { '0' })
        .collect();
    format!("|{digits}⟩")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anticommutator(a: &FockOp, b: &FockOp) -> FockOp {
        a * b + b * a
    }

    #[test]
    fn canonical_anticommutation() {
        let l = Ladder::new();
        for i in 0..N_MODES {
            for j in 0..N_MODES {
                let ac = anticommutator(&l.destroy[i], &l.create[j]);
                let expected = if i == j { FockOp::identity() } else { FockOp::zeros() };
                assert!((ac - expected).norm() < 1e-15, "{{a_{i}, a_{j}^†}}");
                assert!(anticommutator(&l.create[i], &l.create[j]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn number_operator_counts_bits() {
        let l = Ladder::new();
        let n = l.total_number();
        for s in 0..DIM {
            assert_eq!(n[(s, s)].re, occupation(s) as f64);
        }
    }

    #[test]
    fn labels_follow_mode_order() {
        assert_eq!(state_label(0), "|0000⟩");
        assert_eq!(state_label(bit(0)), "|1000⟩");
        assert_eq!(state_label(bit(3) | bit(1)), "|0101⟩");
    }
}
