//! Continuum Fourier transform `ψ̃(p) = (2π)^{-1/2} ∫ ψ(x) e^{-ipx} dx` on
//! uniform grids, evaluated with an FFT plus the explicit phase factors that
//! account for the grid offset.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::{Grid1D, SampledWave};
use crate::error::{Error, Result};

/// Largest boundary amplitude (relative to the L² norm) accepted by the
/// transforms.
pub const LEAKAGE_THRESHOLD: f64 = 1e-8;

/// Momentum grid conjugate to `grid`: spacing `2π/(n Δx)`, index `n/2` at zero.
pub fn conjugate_grid(grid: &Grid1D) -> Grid1D {
    let n = grid.n_points();
    let dp = 2.0 * PI / (n as f64 * grid.spacing());
    let c = (n / 2) as f64;
    Grid1D::from_spacing(-c * dp, dp, n).expect("positive spacing")
}

/// Coordinate grid starting at `x_min` that is conjugate to `momentum`.
pub fn coordinate_grid_for(momentum: &Grid1D, x_min: f64) -> Grid1D {
    let n = momentum.n_points();
    let dx = 2.0 * PI / (n as f64 * momentum.spacing());
    Grid1D::from_spacing(x_min, dx, n).expect("positive spacing")
}

/// A planned transform between a coordinate grid and its conjugate momentum
/// grid. Reusable across the rows or columns of a joint state.
#[derive(Clone)]
pub struct FourierPair {
    coordinate: Grid1D,
    momentum: Grid1D,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for FourierPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FourierPair")
            .field("coordinate", &self.coordinate)
            .field("momentum", &self.momentum)
            .finish()
    }
}

impl FourierPair {
    pub fn new(coordinate: Grid1D) -> Self {
        let momentum = conjugate_grid(&coordinate);
        Self::build(coordinate, momentum)
    }

    /// Pair for an explicitly given coordinate/momentum grid couple; fails if
    /// they are not conjugate.
    pub fn with_grids(coordinate: Grid1D, momentum: Grid1D) -> Result<Self> {
        let expected = conjugate_grid(&coordinate);
        let n = coordinate.n_points();
        let same = momentum.n_points() == n
            && ((momentum.spacing() - expected.spacing()) / expected.spacing()).abs() < 1e-10
            && (momentum.x_min() - expected.x_min()).abs() < 1e-10 * expected.spacing() * n as f64;
        if !same {
            return Err(Error::InvalidArgument(
                "momentum grid is not conjugate to the coordinate grid".into(),
            ));
        }
        Ok(Self::build(coordinate, expected))
    }

    fn build(coordinate: Grid1D, momentum: Grid1D) -> Self {
        let n = coordinate.n_points();
        let mut planner = FftPlanner::new();
        Self {
            coordinate,
            momentum,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn coordinate(&self) -> &Grid1D {
        &self.coordinate
    }

    pub fn momentum(&self) -> &Grid1D {
        &self.momentum
    }

    fn center(&self) -> usize {
        self.coordinate.n_points() / 2
    }

    /// In-place transform of coordinate samples to momentum samples.
    pub fn to_momentum(&self, values: &mut [Complex64]) {
        let n = values.len();
        debug_assert_eq!(n, self.coordinate.n_points());
        let c = self.center() as f64;
        let x0 = self.coordinate.x_min();
        for (j, v) in values.iter_mut().enumerate() {
            *v *= Complex64::from_polar(1.0, 2.0 * PI * c * j as f64 / n as f64);
        }
        self.forward.process(values);
        let scale = self.coordinate.spacing() / (2.0 * PI).sqrt();
        for (k, v) in values.iter_mut().enumerate() {
            let p = self.momentum.point(k);
            *v *= Complex64::from_polar(scale, -p * x0);
        }
    }

    /// In-place transform of momentum samples back to the coordinate grid.
    pub fn to_coordinate(&self, values: &mut [Complex64]) {
        let n = values.len();
        debug_assert_eq!(n, self.momentum.n_points());
        let c = self.center() as f64;
        let x0 = self.coordinate.x_min();
        for (k, v) in values.iter_mut().enumerate() {
            let p = self.momentum.point(k);
            *v *= Complex64::from_polar(1.0, p * x0);
        }
        self.inverse.process(values);
        let scale = self.momentum.spacing() / (2.0 * PI).sqrt();
        for (j, v) in values.iter_mut().enumerate() {
            *v *= Complex64::from_polar(scale, -2.0 * PI * c * j as f64 / n as f64);
        }
    }
}

fn check_leakage(psi: &SampledWave) -> Result<()> {
    let edge = psi.edge_ratio();
    if edge > LEAKAGE_THRESHOLD {
        Err(Error::BoundaryLeakage { edge })
    } else {
        Ok(())
    }
}

/// Momentum-space wavefunction on the conjugate grid.
pub fn fourier_to_momentum(psi: &SampledWave) -> Result<SampledWave> {
    check_leakage(psi)?;
    let pair = FourierPair::new(*psi.grid());
    let mut values = psi.amplitudes().to_vec();
    pair.to_momentum(&mut values);
    SampledWave::new(*pair.momentum(), values)
}

/// Inverse transform onto `coordinate`, which must be conjugate to the grid
/// of `psi_tilde`.
pub fn fourier_to_coordinate(psi_tilde: &SampledWave, coordinate: &Grid1D) -> Result<SampledWave> {
    check_leakage(psi_tilde)?;
    let pair = FourierPair::with_grids(*coordinate, *psi_tilde.grid())?;
    let mut values = psi_tilde.amplitudes().to_vec();
    pair.to_coordinate(&mut values);
    SampledWave::new(*coordinate, values)
}
