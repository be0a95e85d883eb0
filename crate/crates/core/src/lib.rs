//! Which-way physics of interfering quantum states.
//!
//! The crate models a particle passing an m-slit screen while a detector
//! records a correlated "spot", and quantifies how that entanglement erodes
//! the far-field fringes:
//!
//! * [`interference`]: Gaussian slit wavefunctions, multi-slit form factors
//!   and the entangled particle-detector joint state.
//! * [`schmidt`]: analytic (two-slit) and SVD-based Schmidt decompositions,
//!   reduced density matrices and the entropy / Schmidt number / information
//!   measures.
//! * [`coherence`]: fringe visibility and its coupling to the Schmidt number,
//!   including the finite-source `sinc` model.
//! * [`tunneling`]: the quartic double well as a two-level system, a pair of
//!   delta-coupled wells, and the ammonia isotope chain.
//! * [`tomography`]: SVD analysis of linear measurement protocols, adequacy,
//!   completeness classes and the `K_max` entanglement bound.
//!
//! Units are dimensionless with ħ = 1 throughout. All fallible operations
//! return [`Result`] with the crate-wide [`Error`].

pub mod coherence;
pub mod error;
pub mod interference;
pub mod numerics;
pub mod schmidt;
pub mod tomography;
pub mod tunneling;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use numerics::{Axis, ComplexMatrix, Grid1D, SampledWave};
