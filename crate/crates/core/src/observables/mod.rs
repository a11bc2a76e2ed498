//! Quantum-phase-transition diagnostics of the ground state.

pub mod density;
pub mod entropy;
pub mod fidelity;
pub mod magnetization;

pub use density::{concurrence, pair_concurrence, two_site_density_matrix, TwoSiteDensityMatrix};
pub use entropy::{block_entropy, entropy_curve, EntropyCurve};
pub use fidelity::{
    fidelity, fidelity_between, fidelity_map, fidelity_susceptibility,
    fidelity_susceptibility_extrapolated, fs_scan, Direction, Fidelity, FidelityMapPoint,
    FidelitySusceptibility,
};
pub use magnetization::{
    ising_susceptibility_peak, magnetization, magnetization_analytic, susceptibility,
    susceptibility_analytic, SusceptibilityPoint,
};
