//! Momentum-space solution of the chain: blocks, spectra, ground states.

pub mod block;
pub mod eigen;
pub mod fock;
pub mod ground;
pub mod ising;
pub mod spectrum;

pub use block::{block_hamiltonian, BlockHamiltonian, Parity};
pub use eigen::{hermitian_eigensystem, Eigensystem};
pub use ground::{
    ground_energy_analytic, ground_state, ground_state_with, BlockGround, GroundState,
    LiftDirection, Selection, SpecialPointState,
};
pub use ising::{ising_ground_energy, IsingEnergy};
pub use spectrum::{energy_gap, spectra_n4, spectrum_analytic, Spectrum};
