//! Grids, quadrature, the continuum Fourier transform and dense linear
//! algebra shared by the physics modules.

mod fourier;
mod grid;
mod linalg;
pub mod tridiag;

pub use fourier::{
    conjugate_grid, coordinate_grid_for, fourier_to_coordinate, fourier_to_momentum, FourierPair,
    LEAKAGE_THRESHOLD,
};
pub use grid::{
    default_grid, make_grid, quadrature, Axis, Grid1D, SampledWave, DEFAULT_GRID_POINTS,
    DEFAULT_TAIL_SIGMAS,
};
pub use linalg::{
    complete_basis, eigh, hermitian_deviation, low_rank_svd, svd, ComplexMatrix, Eigh, Svd,
    HERMITIAN_TOL,
};
