use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{tridiag, Grid1D};

/// Overlap above which the two-level treatment is no longer trusted.
pub const VALIDITY_OVERLAP: f64 = 0.01;

pub const MIN_EIGENSOLVE_POINTS: usize = 512;

/// `U(x) = -αx²/2 + βx⁴/4` for a particle of mass `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubleWell {
    pub alpha: f64,
    pub beta: f64,
    pub mass: f64,
}

impl DoubleWell {
    pub fn new(alpha: f64, beta: f64, mass: f64) -> Result<Self> {
        for (v, name) in [(alpha, "alpha"), (beta, "beta"), (mass, "mass")] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { alpha, beta, mass })
    }

    pub fn potential(&self, x: f64) -> f64 {
        let x2 = x * x;
        -self.alpha * x2 / 2.0 + self.beta * x2 * x2 / 4.0
    }
}

/// Harmonic approximation around the two minima.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellDerived {
    pub a: f64,
    pub u_min: f64,
    pub omega0: f64,
    pub sigma_x: f64,
    /// `exp(-a²/(2σ_x²))`
    pub overlap: f64,
}

impl WellDerived {
    pub fn is_two_level_valid(&self) -> bool {
        self.overlap <= VALIDITY_OVERLAP
    }
}

pub fn derive_well(well: &DoubleWell) -> WellDerived {
    let a = (well.alpha / well.beta).sqrt();
    let omega0 = (2.0 * well.alpha / well.mass).sqrt();
    let sigma_x = (1.0 / (2.0 * well.mass * omega0)).sqrt();
    WellDerived {
        a,
        u_min: -well.alpha * well.alpha / (4.0 * well.beta),
        omega0,
        sigma_x,
        overlap: (-a * a / (2.0 * sigma_x * sigma_x)).exp(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelEnergies {
    pub c0_sq: f64,
    pub c1_sq: f64,
    pub t0: f64,
    pub t1: f64,
    pub u0: f64,
    pub u1: f64,
    pub e0: f64,
    pub e1: f64,
    /// `E1 - E0` evaluated without cancellation.
    pub delta_e: f64,
}

/// Kinetic energies `(T0, T1)` of the even and odd two-Gaussian states. The
/// odd one is singular at `a = 0` and returned as infinity there.
pub fn kinetic_energies(a: f64, sigma_x: f64, mass: f64) -> (f64, f64) {
    let e = (-a * a / (2.0 * sigma_x * sigma_x)).exp();
    let q = a * a / (sigma_x * sigma_x) - 1.0;
    let tau = 1.0 / (8.0 * mass * sigma_x * sigma_x);
    let t0 = tau / (1.0 + e) * (1.0 - q * e);
    let t1 = if e < 1.0 { tau / (1.0 - e) * (1.0 + q * e) } else { f64::INFINITY };
    (t0, t1)
}

/// Energies of the even/odd combinations of the two harmonic ground states.
pub fn two_level_energies(derived: &WellDerived, well: &DoubleWell) -> Result<TwoLevelEnergies> {
    let (a, s2, e) = (derived.a, derived.sigma_x * derived.sigma_x, derived.overlap);
    if 1.0 - e < 1e-12 {
        return Err(Error::DegenerateWell(format!("overlap {e} leaves the odd state unnormalizable")));
    }
    let (al, be) = (well.alpha, well.beta);
    let c0_sq = 1.0 / (1.0 + e);
    let c1_sq = 1.0 / (1.0 - e);
    let (t0, t1) = kinetic_energies(a, derived.sigma_x, well.mass);
    let base = -al / 2.0 * (a * a + s2) + be / 4.0 * (a.powi(4) + 6.0 * s2 * a * a + 3.0 * s2 * s2);
    let cross = -al * s2 / 2.0 + 3.0 * be * s2 * s2 / 4.0;
    let u0 = c0_sq * (base + e * cross);
    let u1 = c1_sq * (base - e * cross);
    // E1 - E0 = 2e(X + Y)/(1 - e²) with X = τ + base, Y = τq - cross
    let tau = 1.0 / (8.0 * well.mass * s2);
    let q = a * a / s2 - 1.0;
    let delta_e = 2.0 * e * (tau + base + tau * q - cross) / (1.0 - e * e);
    Ok(TwoLevelEnergies { c0_sq, c1_sq, t0, t1, u0, u1, e0: u0 + t0, e1: u1 + t1, delta_e })
}

fn splitting(alpha: f64, a: f64, mass: f64) -> Result<(f64, WellDerived)> {
    let well = DoubleWell::new(alpha, alpha / (a * a), mass)?;
    let derived = derive_well(&well);
    Ok((two_level_energies(&derived, &well)?.delta_e, derived))
}

/// Well with minima at `±a_target` whose two-level splitting is
/// `delta_e_target`, found by bisection in `α` along `β = α/a²`.
pub fn fit_potential(a_target: f64, delta_e_target: f64, mass: f64) -> Result<DoubleWell> {
    for (v, name) in [(a_target, "a"), (delta_e_target, "splitting"), (mass, "mass")] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
        }
    }
    // α at which the overlap reaches the validity limit: a²√(2αm) = ln(1/overlap)
    let log_inv = -VALIDITY_OVERLAP.ln();
    let mut lo = (log_inv / (a_target * a_target)).powi(2) / (2.0 * mass);
    let (de_lo, _) = splitting(lo, a_target, mass)?;
    if delta_e_target > de_lo {
        return Err(Error::ValidityViolation(VALIDITY_OVERLAP));
    }
    let mut hi = 2.0 * lo;
    let mut doublings = 0;
    while splitting(hi, a_target, mass)?.0 > delta_e_target {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::NoRootInBracket { lo, hi });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if splitting(mid, a_target, mass)?.0 > delta_e_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = 0.5 * (lo + hi);
    let (de, _) = splitting(alpha, a_target, mass)?;
    if ((de - delta_e_target) / delta_e_target).abs() > 1e-10 {
        return Err(Error::Convergence("fit_potential"));
    }
    DoubleWell::new(alpha, alpha / (a_target * a_target), mass)
}

/// Two lowest levels of a finite-difference Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpectrum {
    pub grid: Grid1D,
    pub e0: f64,
    pub e1: f64,
    /// Real eigenfunctions normalized to `∫|ψ|² dx = 1`.
    pub ground: Vec<f64>,
    pub excited: Vec<f64>,
}

impl GridSpectrum {
    pub fn delta_e(&self) -> f64 {
        self.e1 - self.e0
    }
}

/// `-(1/2m) d²/dx² + U(x)` with second-order central differences and
/// Dirichlet ends.
pub fn grid_eigensolve_potential(potential: impl Fn(f64) -> f64, mass: f64, grid: Grid1D) -> Result<GridSpectrum> {
    let n = grid.n_points();
    if n < 3 {
        return Err(Error::InsufficientGrid(format!("{n} points")));
    }
    let h = grid.spacing();
    let kin = 1.0 / (2.0 * mass * h * h);
    let diag: Vec<f64> = grid.points().iter().map(|&x| 2.0 * kin + potential(x)).collect();
    let off = vec![-kin; n - 1];
    let e0 = tridiag::eigenvalue(&diag, &off, 0)?;
    let e1 = tridiag::eigenvalue(&diag, &off, 1)?;
    let scale = h.sqrt().recip();
    let mut ground = tridiag::eigenvector(&diag, &off, e0);
    let mut excited = tridiag::eigenvector(&diag, &off, e1);
    ground.iter_mut().chain(excited.iter_mut()).for_each(|v| *v *= scale);
    Ok(GridSpectrum { grid, e0, e1, ground, excited })
}

pub fn grid_eigensolve(well: &DoubleWell, grid: Grid1D) -> Result<GridSpectrum> {
    let a = derive_well(well).a;
    if grid.n_points() < MIN_EIGENSOLVE_POINTS {
        return Err(Error::InsufficientGrid(format!(
            "{} points, need at least {MIN_EIGENSOLVE_POINTS}",
            grid.n_points()
        )));
    }
    if grid.x_min() > -2.0 * a || grid.x_max() < 2.0 * a {
        return Err(Error::InsufficientGrid(format!("grid must span [-2a, 2a] with a = {a}")));
    }
    grid_eigensolve_potential(|x| well.potential(x), well.mass, grid)
}
