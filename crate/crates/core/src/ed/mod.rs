//! Brute-force exact diagonalisation of small periodic spin chains: the
//! independent reference for every momentum-space result.

pub mod hamiltonian;
pub mod lanczos;
pub mod observables;
pub mod solve;

pub use hamiltonian::{Sector, SpinHamiltonian, MAX_SITES};
pub use observables::{block_entropy, magnetization, overlap, pauli_expectation, two_site_rdm, Pauli};
pub use solve::{ed_ground_state, ed_ground_state_of, ed_low_levels, ed_spectrum, EDGroundState};
