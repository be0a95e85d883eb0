//! Fringe visibility and its coupling to the Schmidt number.
//!
//! A two-slit particle entangled with an auxiliary qubit through opposite
//! phase shifts `±φ` reproduces the fringe washing of a classically
//! partially coherent source: the averaged pattern has visibility
//! `|cos 2φ|` and the Schmidt number obeys `K = 2/(1+V²)`.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interference::{slit_amplitude, slit_momentum_amplitude, JointState, Representation, SlitParams};
use crate::numerics::{Axis, Grid1D};

/// Minimum samples per fringe period for visibility extraction.
pub const MIN_SAMPLES_PER_PERIOD: f64 = 16.0;

/// Phase-shifted qubit model of a partially coherent source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceModel {
    /// Phase `φ` in radians.
    pub phi: f64,
    pub slits: SlitParams,
}

impl CoherenceModel {
    pub fn new(phi: f64, slits: SlitParams) -> Result<Self> {
        if slits.m != 2 {
            return Err(Error::InvalidArgument(format!("coherence model needs two slits, got {}", slits.m)));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidArgument("phase must be finite".into()));
        }
        Ok(Self { phi, slits })
    }

    /// Visibility of the qubit-averaged pattern, `|cos 2φ|`.
    pub fn visibility(&self) -> f64 {
        (2.0 * self.phi).cos().abs()
    }
}

/// Visibility together with the quantities it fixes for a two-mode state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VisibilityReport {
    pub v: f64,
    pub k: f64,
    pub lambda0: f64,
    pub lambda1: f64,
    pub s: f64,
}

impl VisibilityReport {
    pub fn from_v(v: f64) -> Result<Self> {
        Ok(Self {
            v,
            k: k_from_v(v)?,
            lambda0: (1.0 + v) / 2.0,
            lambda1: (1.0 - v) / 2.0,
            s: entropy_from_v(v)?,
        })
    }

    pub fn from_k(k: f64) -> Result<Self> {
        Self::from_v(v_from_k(k)?)
    }
}

fn check_v(v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidArgument(format!("visibility {v} outside [0, 1]")));
    }
    Ok(())
}

pub fn k_from_v(v: f64) -> Result<f64> {
    check_v(v)?;
    Ok(2.0 / (1.0 + v * v))
}

pub fn v_from_k(k: f64) -> Result<f64> {
    if !(1.0..=2.0).contains(&k) {
        return Err(Error::InvalidArgument(format!("Schmidt number {k} outside [1, 2]")));
    }
    Ok(((2.0 - k) / k).sqrt())
}

/// Entropy of the weights `((1+V)/2, (1-V)/2)` in bits.
pub fn entropy_from_v(v: f64) -> Result<f64> {
    check_v(v)?;
    let h = |l: f64| if l > 0.0 { -l * l.log2() } else { 0.0 };
    Ok(h((1.0 + v) / 2.0) + h((1.0 - v) / 2.0))
}

/// Normalized sinc, `sin(πx)/(πx)`.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Visibility for a source of dimensionless size `y`.
pub fn source_visibility(y: f64) -> f64 {
    sinc(4.0 * y).abs()
}

pub fn source_schmidt(y: f64) -> f64 {
    2.0 / (1.0 + sinc(4.0 * y).powi(2))
}

/// `(y, V, K)` samples.
pub fn source_curve(ys: &[f64]) -> Vec<(f64, f64, f64)> {
    ys.iter().map(|&y| (y, source_visibility(y), source_schmidt(y))).collect()
}

/// Fringe visibility of a far-field two-slit density.
///
/// The Gaussian single-slit envelope `exp(-2σ_x²p²)` is divided out and
/// `A + B cos(2ap) + C sin(2ap)` is least-squares fitted over the central
/// fringe period `|p| ≤ π/(2a)`; then `I_max/min = A ± √(B²+C²)`.
pub fn visibility_from_intensity(density: &[f64], grid: &Grid1D, slits: &SlitParams) -> Result<f64> {
    if density.len() != grid.n_points() {
        return Err(Error::LengthMismatch { expected: grid.n_points(), got: density.len() });
    }
    let a = slits.a;
    let period = PI / a;
    let per_period = period / grid.spacing();
    if per_period < MIN_SAMPLES_PER_PERIOD {
        return Err(Error::UnresolvedFringes(per_period));
    }
    let half = period / 2.0;
    if grid.x_min() > -half || grid.x_max() < half {
        return Err(Error::InvalidArgument("grid does not cover the central fringe period".into()));
    }
    let s2 = slits.sigma_x * slits.sigma_x;
    let mut normal = Matrix3::<f64>::zeros();
    let mut rhs = Vector3::<f64>::zeros();
    for (i, p) in grid.points().into_iter().enumerate() {
        if p.abs() > half {
            continue;
        }
        let y = density[i] / (-2.0 * s2 * p * p).exp();
        let basis = Vector3::new(1.0, (2.0 * a * p).cos(), (2.0 * a * p).sin());
        normal += basis * basis.transpose();
        rhs += basis * y;
    }
    let coef = normal
        .try_inverse()
        .ok_or(Error::UnresolvedFringes(per_period))?
        * rhs;
    let amp = coef[1].hypot(coef[2]);
    let (imax, imin) = (coef[0] + amp, (coef[0] - amp).max(0.0));
    if !(imax > 0.0) {
        return Err(Error::InvalidArgument("density has no positive fringe".into()));
    }
    Ok(((imax - imin) / (imax + imin)).clamp(0.0, 1.0))
}

/// Particle entangled with a qubit: slit `+a` carries phase `e^{∓iφ}` and
/// slit `-a` carries `e^{±iφ}` for qubit states `|0⟩`, `|1⟩`. Normalized
/// numerically; the detector axis has dimension two.
pub fn qubit_coherence_state(
    model: &CoherenceModel,
    grid: Grid1D,
    representation: Representation,
) -> Result<JointState> {
    let (a, sigma) = (model.slits.a, model.slits.sigma_x);
    let e = Complex64::from_polar(1.0, model.phi);
    let amp = |x: f64, q: f64| -> Complex64 {
        let (up, down) = match representation {
            Representation::Coordinate => (
                Complex64::new(slit_amplitude(sigma, a, x), 0.0),
                Complex64::new(slit_amplitude(sigma, -a, x), 0.0),
            ),
            Representation::Momentum => (slit_momentum_amplitude(sigma, a, x), slit_momentum_amplitude(sigma, -a, x)),
        };
        if q == 0.0 {
            up * e.conj() + down * e
        } else {
            up * e + down * e.conj()
        }
    };
    JointState::from_fn(Axis::Continuous(grid), Axis::Discrete(2), representation, amp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interference::{two_slit_intensity, two_slit_marginal_momentum, DetectorParams};
    use crate::numerics::make_grid;
    use crate::schmidt::{numerical_schmidt, DEFAULT_TRUNCATION};
    use approx::assert_relative_eq;

    fn slits() -> SlitParams {
        SlitParams::two_slit(5.0, 0.5).unwrap()
    }

    fn pgrid() -> Grid1D {
        make_grid(0.0, 10.0, 1024).unwrap()
    }

    #[test]
    fn coupling_examples() {
        assert_eq!(k_from_v(1.0).unwrap(), 1.0);
        assert_eq!(k_from_v(0.0).unwrap(), 2.0);
        assert!((k_from_v(0.6065).unwrap() - 1.4621).abs() < 5e-4);
        assert_eq!(entropy_from_v(1.0).unwrap(), 0.0);
        assert_eq!(entropy_from_v(0.0).unwrap(), 1.0);
        assert!((entropy_from_v(0.6065).unwrap() - 0.7153).abs() < 5e-4);
        assert!(k_from_v(1.1).is_err());
        assert!(v_from_k(0.9).is_err());
        assert!(entropy_from_v(-0.1).is_err());
        assert_relative_eq!(v_from_k(k_from_v(0.3).unwrap()).unwrap(), 0.3, epsilon = 1e-12);
    }

    #[test]
    fn report_is_consistent() {
        let r = VisibilityReport::from_v(0.6065).unwrap();
        assert_relative_eq!(r.k, 2.0 / (1.0 + r.v * r.v), epsilon = 1e-12);
        assert_relative_eq!(r.lambda0 + r.lambda1, 1.0, epsilon = 1e-15);
        assert_relative_eq!(VisibilityReport::from_k(r.k).unwrap().v, 0.6065, epsilon = 1e-12);
    }

    #[test]
    fn source_examples() {
        assert_eq!(source_visibility(0.0), 1.0);
        assert_eq!(source_schmidt(0.0), 1.0);
        assert!(source_visibility(0.25) < 1e-15);
        assert!((source_schmidt(0.25) - 2.0).abs() < 1e-15);
        assert_relative_eq!(source_visibility(0.125), 2.0 / PI, epsilon = 1e-12);
        assert_relative_eq!(source_schmidt(0.125), 2.0 / (1.0 + 4.0 / (PI * PI)), epsilon = 1e-12);
    }

    #[test]
    fn visibility_of_ideal_and_marginal_patterns() {
        let s = slits();
        let g = pgrid();
        let ideal: Vec<f64> = g.points().iter().map(|&p| two_slit_intensity(s.a, s.sigma_x, p)).collect();
        assert!((visibility_from_intensity(&ideal, &g, &s).unwrap() - 1.0).abs() < 1e-3);

        let d = DetectorParams::new(0.5, 0.5).unwrap();
        let marg: Vec<f64> = g.points().iter().map(|&p| two_slit_marginal_momentum(&s, &d, p)).collect();
        let v = visibility_from_intensity(&marg, &g, &s).unwrap();
        assert!((v - (-0.5f64).exp()).abs() < 1e-3, "{v}");
    }

    #[test]
    fn visibility_needs_resolved_fringes() {
        let s = slits();
        let g = make_grid(0.0, 10.0, 64).unwrap();
        let d = vec![1.0; 64];
        assert!(matches!(visibility_from_intensity(&d, &g, &s), Err(Error::UnresolvedFringes(_))));
    }

    #[test]
    fn qubit_model_limits() {
        let s = slits();
        for rep in [Representation::Momentum, Representation::Coordinate] {
            let grid = match rep {
                Representation::Momentum => pgrid(),
                Representation::Coordinate => make_grid(0.0, 12.0, 1024).unwrap(),
            };
            let st0 = qubit_coherence_state(&CoherenceModel::new(0.0, s).unwrap(), grid, rep).unwrap();
            let k0 = numerical_schmidt(&st0, DEFAULT_TRUNCATION).unwrap().schmidt_number();
            assert!((k0 - 1.0).abs() < 1e-9);
            let st = qubit_coherence_state(&CoherenceModel::new(PI / 4.0, s).unwrap(), grid, rep).unwrap();
            let k = numerical_schmidt(&st, DEFAULT_TRUNCATION).unwrap().schmidt_number();
            assert!((k - 2.0).abs() < 1e-6, "{rep}: {k}");
        }
    }

    #[test]
    fn averaged_pattern_visibility() {
        let s = slits();
        for phi in [0.0, 0.2, PI / 8.0, PI / 4.0, 1.0] {
            let m = CoherenceModel::new(phi, s).unwrap();
            let st = qubit_coherence_state(&m, pgrid(), Representation::Momentum).unwrap();
            let v = visibility_from_intensity(&st.particle_density(), &pgrid(), &s).unwrap();
            assert!((v - m.visibility()).abs() < 1e-3, "phi {phi}: {v}");
        }
    }

    #[test]
    fn rejects_multi_slit_model() {
        assert!(CoherenceModel::new(0.1, SlitParams::new(5.0, 0.5, 3).unwrap()).is_err());
    }
}
