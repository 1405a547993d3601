//! Exact solution of the open-boundary XX spin chain in a transverse field.
//!
//! The chain `H = -Σ (J/2)(σˣσˣ + σʸσʸ) - B Σ σᶻ` maps onto free fermions, so
//! its full spectrum, spin-basis eigenstates, Gibbs states and purity are
//! available in closed form. The [`oracle`] module rebuilds the same
//! Hamiltonian densely and diagonalizes it; every closed form in this crate
//! is checked against it.

pub mod combinatorics;
pub mod entanglement;
mod error;
pub mod limits;
pub mod oracle;
pub mod spectrum;
pub mod states;
pub mod thermal;

pub use entanglement::{
    critical_temperature_two_qubit, negativity, partial_transpose, two_qubit_populations, two_qubit_separable,
    BipartiteSplit,
};
pub use error::{Result, XxError};
pub use limits::{
    convergence_report, crossing_density, finite_size_energy_density, thermo_energy_density, ConvergenceRow,
};
pub use oracle::{build_hamiltonian, diagonalize, DenseHamiltonian, Eigensystem};
pub use spectrum::{
    crossing_fields, eigenenergy, enumerate_levels, ground_energy, ground_sector, log_partition_function,
    mode_energies, partition_function, ChainParams, CrossingSet, EnergyLevel, GroundSector, ModeSpectrum,
    OccupationState,
};
pub use states::{
    build_eigenstate, ground_state, label_to_sector_index, sector_index_to_label, sine_coefficient, slater_amplitude,
    SectorIndex, SpinBasisVector,
};
pub use thermal::{
    beta_from_temperature, boltzmann_weights, crossing_mixture, purity_analytic, purity_dense, subspace_weights,
    thermal_density_matrix, DensityMatrix, SectorBasis, ThermalEnsemble,
};
