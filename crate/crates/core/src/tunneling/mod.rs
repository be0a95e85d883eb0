//! Tunneling in a symmetric double well, a pair of contact-coupled
//! double-well qubits, and the ammonia inversion splitting.

mod ammonia;
mod qubits;
mod well;

pub use ammonia::{
    reduced_mass, splitting_to_frequency, Isotope, AMMONIA_ISOTOPES, BOHR_RADIUS_ANGSTROM, ENERGY_UNIT_J,
    GHZ_PER_ENERGY_UNIT, ND3, NH3, NH3_SPLITTING, NT3, PYRAMID_HEIGHT_ANGSTROM,
};
pub use qubits::{build_two_qubit, concurrence_delta, ground_state_entanglement, schmidt_from_coefficients, GroundStateEntanglement, TwoQubitSystem};
pub use well::{
    derive_well, fit_potential, grid_eigensolve, grid_eigensolve_potential, kinetic_energies, two_level_energies,
    DoubleWell, GridSpectrum, TwoLevelEnergies, WellDerived, MIN_EIGENSOLVE_POINTS, VALIDITY_OVERLAP,
};
