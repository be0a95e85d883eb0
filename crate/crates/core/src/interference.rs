//! Gaussian slits, multi-slit form factors, and the entangled
//! particle-detector state with its marginal densities.
//!
//! Slit `j` of an `m`-slit screen is a Gaussian amplitude of width `σ_x`
//! centred at `x_j`; a particle passing it leaves the detector in a Gaussian
//! "spot" of width `σ_ξ` centred at `ξ_j`. Centres are spaced by `2a` (slits)
//! and `2b` (spots) and are symmetric about zero. `b = 0` means the detector
//! learns nothing and the joint state factorizes.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::numerics::{
    default_grid, make_grid, Axis, ComplexMatrix, FourierPair, Grid1D, SampledWave, LEAKAGE_THRESHOLD,
};

/// Screen geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlitParams {
    /// Half the distance between neighbouring slits.
    pub a: f64,
    pub sigma_x: f64,
    /// Number of slits.
    pub m: usize,
}

impl SlitParams {
    pub fn new(a: f64, sigma_x: f64, m: usize) -> Result<Self> {
        ensure(m >= 1, || format!("slit count must be at least 1, got {m}"))?;
        ensure(sigma_x > 0.0 && sigma_x.is_finite(), || {
            format!("sigma_x must be positive, got {sigma_x}")
        })?;
        ensure(a.is_finite() && (a > 0.0 || (m == 1 && a >= 0.0)), || {
            format!("slit half-spacing a must be positive for m >= 2, got {a}")
        })?;
        Ok(Self { a, sigma_x, m })
    }

    pub fn two_slit(a: f64, sigma_x: f64) -> Result<Self> {
        Self::new(a, sigma_x, 2)
    }

    /// `exp(-a²/(2σ_x²))`, the overlap of neighbouring slit amplitudes.
    pub fn overlap(&self) -> f64 {
        (-self.a * self.a / (2.0 * self.sigma_x * self.sigma_x)).exp()
    }

    pub fn well_separated(&self) -> bool {
        self.overlap() < 0.01
    }

    pub fn centers(&self) -> Vec<f64> {
        slit_centers(self.m, self.a)
    }
}

/// Which-way detector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorParams {
    /// Half the distance between neighbouring spots.
    pub b: f64,
    pub sigma_xi: f64,
}

impl DetectorParams {
    pub fn new(b: f64, sigma_xi: f64) -> Result<Self> {
        ensure(b >= 0.0 && b.is_finite(), || format!("spot half-spacing b must be non-negative, got {b}"))?;
        ensure(sigma_xi > 0.0 && sigma_xi.is_finite(), || {
            format!("sigma_xi must be positive, got {sigma_xi}")
        })?;
        Ok(Self { b, sigma_xi })
    }

    /// `exp(-b²/(2σ_ξ²))`: overlap of neighbouring spots, and the fringe
    /// modulation factor of the two-slit pattern.
    pub fn overlap(&self) -> f64 {
        (-self.b * self.b / (2.0 * self.sigma_xi * self.sigma_xi)).exp()
    }

    pub fn centers(&self, m: usize) -> Vec<f64> {
        spot_centers(m, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Coordinate,
    Momentum,
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Coordinate => f.write_str("coordinate"),
            Representation::Momentum => f.write_str("momentum"),
        }
    }
}

/// Slit centres: `0, ±2a, …` for odd `m`, `±a, ±3a, …` for even `m`.
pub fn slit_centers(m: usize, a: f64) -> Vec<f64> {
    (0..m).map(|j| (2.0 * j as f64 - (m as f64 - 1.0)) * a).collect()
}

/// Detector spot centres, laid out like [`slit_centers`] with spacing `2b`.
pub fn spot_centers(m: usize, b: f64) -> Vec<f64> {
    slit_centers(m, b)
}

/// Normalized single-slit coordinate amplitude `(2πσ²)^{-1/4} exp(-(x-c)²/(4σ²))`.
pub fn slit_amplitude(sigma: f64, center: f64, x: f64) -> f64 {
    (2.0 * PI * sigma * sigma).powf(-0.25) * (-(x - center).powi(2) / (4.0 * sigma * sigma)).exp()
}

/// Fourier transform of [`slit_amplitude`]:
/// `(2π)^{-1/4} √(2σ) exp(-σ²p²) exp(-ipc)`.
pub fn slit_momentum_amplitude(sigma: f64, center: f64, p: f64) -> Complex64 {
    Complex64::from_polar(
        (2.0 * PI).powf(-0.25) * (2.0 * sigma).sqrt() * (-sigma * sigma * p * p).exp(),
        -p * center,
    )
}

/// Far-field density of one Gaussian slit.
pub fn single_slit_momentum_density(sigma_x: f64, p: f64) -> f64 {
    (2.0 * PI).recip().sqrt() * 2.0 * sigma_x * (-2.0 * sigma_x * sigma_x * p * p).exp()
}

/// `C²` of the symmetric two-slit superposition.
pub fn two_slit_norm(a: f64, sigma_x: f64) -> f64 {
    1.0 / (1.0 + (-a * a / (2.0 * sigma_x * sigma_x)).exp())
}

/// Ideal two-slit far-field density `4C²(2π)^{-1/2} σ_x exp(-2σ_x²p²) cos²(pa)`.
pub fn two_slit_intensity(a: f64, sigma_x: f64, p: f64) -> f64 {
    4.0 * two_slit_norm(a, sigma_x) * (2.0 * PI).recip().sqrt() * sigma_x
        * (-2.0 * sigma_x * sigma_x * p * p).exp()
        * (p * a).cos().powi(2)
}

/// Symmetric two-slit coordinate wavefunction sampled on `grid`.
pub fn two_slit_wave(a: f64, sigma_x: f64, grid: Grid1D) -> SampledWave {
    let c = two_slit_norm(a, sigma_x).sqrt() / 2.0_f64.sqrt();
    SampledWave::from_fn(grid, |x| {
        Complex64::new(c * (slit_amplitude(sigma_x, a, x) + slit_amplitude(sigma_x, -a, x)), 0.0)
    })
}

/// Multi-slit form factor `sin(mη)/sin(η)`, continuous through `η = kπ`.
pub fn form_factor(eta: f64, m: usize) -> f64 {
    let mf = m as f64;
    let s = eta.sin();
    if s.abs() >= 1e-6 {
        return (mf * eta).sin() / s;
    }
    // η = kπ + δ: ratio = (-1)^{(m-1)k} sin(mδ)/sin(δ) ≈ ±m (1 - (m²-1)δ²/6)
    let k = (eta / PI).round();
    let delta = eta - k * PI;
    let sign = if ((m as i64 - 1) * k as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign * mf * (1.0 - (mf * mf - 1.0) * delta * delta / 6.0)
}

/// Exact `C²` of the m-slit joint state, from the Gram sum of the Gaussian
/// terms. Reduces to `1/(1 + exp(-(a²/σ_x² + b²/σ_ξ²)/2))` for two slits.
pub fn joint_norm_sq(slits: &SlitParams, det: &DetectorParams) -> f64 {
    let xs = slits.centers();
    let ys = det.centers(slits.m);
    let mut gram = 0.0;
    for j in 0..slits.m {
        for k in 0..slits.m {
            gram += (-(xs[j] - xs[k]).powi(2) / (8.0 * slits.sigma_x.powi(2))
                - (ys[j] - ys[k]).powi(2) / (8.0 * det.sigma_xi.powi(2)))
            .exp();
        }
    }
    slits.m as f64 / gram
}

/// m-slit far-field density without a detector (`b = 0`), closed form.
pub fn multi_slit_intensity(slits: &SlitParams, p: f64) -> f64 {
    let c2 = joint_norm_sq(slits, &DetectorParams { b: 0.0, sigma_xi: 1.0 });
    let f = form_factor(p * slits.a, slits.m);
    c2 / slits.m as f64 * single_slit_momentum_density(slits.sigma_x, p) * f * f
}

/// Particle and detector grids of a joint state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointGrids {
    pub particle: Grid1D,
    pub detector: Grid1D,
}

impl JointGrids {
    /// Default coordinate grids: outermost centre plus ten density widths.
    pub fn coordinate(slits: &SlitParams, det: &DetectorParams, n_points: usize) -> Result<Self> {
        Ok(Self {
            particle: default_grid(&slits.centers(), slits.sigma_x, n_points)?,
            detector: default_grid(&det.centers(slits.m), det.sigma_xi, n_points)?,
        })
    }

    /// Default momentum grids, checked to resolve the finest fringes.
    pub fn momentum(slits: &SlitParams, det: &DetectorParams, n_points: usize) -> Result<Self> {
        let particle = make_grid(0.0, 10.0 / (2.0 * slits.sigma_x), n_points)?;
        let detector = make_grid(0.0, 10.0 / (2.0 * det.sigma_xi), n_points)?;
        for (grid, centers, sigma, name) in [
            (&particle, slits.centers(), slits.sigma_x, "particle"),
            (&detector, det.centers(slits.m), det.sigma_xi, "detector"),
        ] {
            let reach = centers.iter().fold(0.0_f64, |a, c| a.max(c.abs())) + 10.0 * sigma;
            let resolvable = PI / grid.spacing();
            if resolvable < 2.0 * reach {
                return Err(Error::InsufficientGrid(format!(
                    "{name} momentum grid resolves coordinates up to {resolvable:.3}, needs {:.3}; use more points",
                    2.0 * reach
                )));
            }
        }
        Ok(Self { particle, detector })
    }
}

/// Joint amplitude of particle and detector, rows indexed by the particle
/// axis and columns by the detector axis.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    particle: Axis,
    detector: Axis,
    amplitudes: ComplexMatrix,
    representation: Representation,
}

impl JointState {
    pub fn new(
        particle: Axis,
        detector: Axis,
        amplitudes: ComplexMatrix,
        representation: Representation,
    ) -> Result<Self> {
        if amplitudes.nrows() != particle.len() {
            return Err(Error::LengthMismatch { expected: particle.len(), got: amplitudes.nrows() });
        }
        if amplitudes.ncols() != detector.len() {
            return Err(Error::LengthMismatch { expected: detector.len(), got: amplitudes.ncols() });
        }
        Ok(Self { particle, detector, amplitudes, representation })
    }

    /// Sample `f(particle, detector)` and normalize numerically.
    pub fn from_fn(
        particle: Axis,
        detector: Axis,
        representation: Representation,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        let xs = particle.points();
        let ys = detector.points();
        let amplitudes = ComplexMatrix::from_fn(xs.len(), ys.len(), |i, j| f(xs[i], ys[j]));
        Self::new(particle, detector, amplitudes, representation)?.normalized()
    }

    pub fn particle_axis(&self) -> &Axis {
        &self.particle
    }

    pub fn detector_axis(&self) -> &Axis {
        &self.detector
    }

    pub fn amplitudes(&self) -> &ComplexMatrix {
        &self.amplitudes
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    /// `∫∫ |ψ|²` with the axis measures.
    pub fn norm_sqr(&self) -> f64 {
        let wp = self.particle.weights();
        let wd = self.detector.weights();
        let mut total = 0.0;
        for (j, w_j) in wd.iter().enumerate() {
            for (i, w_i) in wp.iter().enumerate() {
                total += w_i * w_j * self.amplitudes[(i, j)].norm_sqr();
            }
        }
        total
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_sqr();
        if !(n > 0.0) {
            return Err(Error::InvalidArgument("cannot normalize a zero joint state".into()));
        }
        self.amplitudes.unscale_mut(n.sqrt());
        Ok(self)
    }

    /// Amplitudes scaled by `√w_i √w_j`, so that the Euclidean structure of
    /// the matrix equals the continuum inner product.
    pub fn weighted_amplitudes(&self) -> ComplexMatrix {
        let wp: Vec<f64> = self.particle.weights().iter().map(|w| w.sqrt()).collect();
        let wd: Vec<f64> = self.detector.weights().iter().map(|w| w.sqrt()).collect();
        ComplexMatrix::from_fn(self.amplitudes.nrows(), self.amplitudes.ncols(), |i, j| {
            self.amplitudes[(i, j)] * (wp[i] * wd[j])
        })
    }

    /// Particle density `∫ |ψ(·, ξ)|² dξ`.
    pub fn particle_density(&self) -> Vec<f64> {
        let wd = self.detector.weights();
        (0..self.amplitudes.nrows())
            .map(|i| wd.iter().enumerate().map(|(j, w)| w * self.amplitudes[(i, j)].norm_sqr()).sum())
            .collect()
    }

    /// Detector density `∫ |ψ(x, ·)|² dx`.
    pub fn detector_density(&self) -> Vec<f64> {
        let wp = self.particle.weights();
        (0..self.amplitudes.ncols())
            .map(|j| wp.iter().enumerate().map(|(i, w)| w * self.amplitudes[(i, j)].norm_sqr()).sum())
            .collect()
    }

    /// Largest amplitude on the boundary of a continuous axis, relative to
    /// the state norm.
    pub fn edge_ratio(&self) -> f64 {
        let (rows, cols) = self.amplitudes.shape();
        let mut edge = 0.0_f64;
        if matches!(self.particle, Axis::Continuous(_)) {
            for j in 0..cols {
                edge = edge.max(self.amplitudes[(0, j)].norm()).max(self.amplitudes[(rows - 1, j)].norm());
            }
        }
        if matches!(self.detector, Axis::Continuous(_)) {
            for i in 0..rows {
                edge = edge.max(self.amplitudes[(i, 0)].norm()).max(self.amplitudes[(i, cols - 1)].norm());
            }
        }
        edge / self.norm_sqr().sqrt()
    }

    fn check_leakage(&self) -> Result<()> {
        let edge = self.edge_ratio();
        if edge > LEAKAGE_THRESHOLD {
            Err(Error::BoundaryLeakage { edge })
        } else {
            Ok(())
        }
    }

    /// Fourier transform of every continuous axis onto its conjugate grid.
    /// Discrete axes (qubit registers) are left untouched.
    pub fn to_momentum(&self) -> Result<JointState> {
        if self.representation != Representation::Coordinate {
            return Err(Error::WrongRepresentation { expected: Representation::Coordinate });
        }
        self.check_leakage()?;
        let mut amps = self.amplitudes.clone();
        let mut particle = self.particle;
        let mut detector = self.detector;
        if let Axis::Continuous(g) = self.particle {
            let pair = FourierPair::new(g);
            for mut col in amps.column_iter_mut() {
                let mut buf: Vec<Complex64> = col.iter().copied().collect();
                pair.to_momentum(&mut buf);
                col.iter_mut().zip(buf).for_each(|(z, v)| *z = v);
            }
            particle = Axis::Continuous(*pair.momentum());
        }
        if let Axis::Continuous(g) = self.detector {
            let pair = FourierPair::new(g);
            for i in 0..amps.nrows() {
                let mut buf: Vec<Complex64> = amps.row(i).iter().copied().collect();
                pair.to_momentum(&mut buf);
                for (j, v) in buf.into_iter().enumerate() {
                    amps[(i, j)] = v;
                }
            }
            detector = Axis::Continuous(*pair.momentum());
        }
        JointState::new(particle, detector, amps, Representation::Momentum)
    }
}

/// Far-field joint amplitude
/// `(C/√m)(2π)^{-1/2} √(2σ_x) √(2σ_ξ) e^{-σ_x²p_x²} e^{-σ_ξ²p_ξ²} F(p_x a + p_ξ b)`,
/// with `C` fixed by numerical normalization.
pub fn joint_state_momentum(slits: &SlitParams, det: &DetectorParams, grids: &JointGrids) -> Result<JointState> {
    let (sx, sxi, a, b, m) = (slits.sigma_x, det.sigma_xi, slits.a, det.b, slits.m);
    let pref = (2.0 * PI).recip().sqrt() * (2.0 * sx).sqrt() * (2.0 * sxi).sqrt() / (m as f64).sqrt();
    let state = JointState::from_fn(
        Axis::Continuous(grids.particle),
        Axis::Continuous(grids.detector),
        Representation::Momentum,
        |px, pxi| {
            let env = (-sx * sx * px * px - sxi * sxi * pxi * pxi).exp();
            Complex64::new(pref * env * form_factor(px * a + pxi * b, m), 0.0)
        },
    )?;
    state.check_leakage()?;
    Ok(state)
}

/// Coordinate joint amplitude: a superposition of `m` two-dimensional
/// Gaussians at `(x_j, ξ_j)`, normalized numerically.
pub fn joint_state_coordinate(slits: &SlitParams, det: &DetectorParams, grids: &JointGrids) -> Result<JointState> {
    let xs = slits.centers();
    let ys = det.centers(slits.m);
    let (sx, sxi) = (slits.sigma_x, det.sigma_xi);
    let state = JointState::from_fn(
        Axis::Continuous(grids.particle),
        Axis::Continuous(grids.detector),
        Representation::Coordinate,
        |x, xi| {
            let v: f64 = xs
                .iter()
                .zip(&ys)
                .map(|(cx, cy)| slit_amplitude(sx, *cx, x) * slit_amplitude(sxi, *cy, xi))
                .sum();
            Complex64::new(v, 0.0)
        },
    )?;
    state.check_leakage()?;
    Ok(state)
}

/// Particle momentum density `P̃_x(p_x) = ∫ P̃(p_x, p_ξ) dp_ξ`.
pub fn marginal_momentum_density(state: &JointState) -> Result<Vec<f64>> {
    if state.representation() != Representation::Momentum {
        return Err(Error::WrongRepresentation { expected: Representation::Momentum });
    }
    Ok(state.particle_density())
}

/// Particle coordinate density `P_x(x) = ∫ P(x, ξ) dξ`.
pub fn marginal_coordinate_density(state: &JointState) -> Result<Vec<f64>> {
    if state.representation() != Representation::Coordinate {
        return Err(Error::WrongRepresentation { expected: Representation::Coordinate });
    }
    Ok(state.particle_density())
}

fn joint_overlap(slits: &SlitParams, det: &DetectorParams) -> f64 {
    (-0.5 * (slits.a.powi(2) / slits.sigma_x.powi(2) + det.b.powi(2) / det.sigma_xi.powi(2))).exp()
}

/// Closed-form two-slit momentum marginal
/// `C² √(2/π) σ_x e^{-2σ_x²p²} [1 + e^{-b²/(2σ_ξ²)} cos(2pa)]`.
pub fn two_slit_marginal_momentum(slits: &SlitParams, det: &DetectorParams, p: f64) -> f64 {
    let c2 = 1.0 / (1.0 + joint_overlap(slits, det));
    let sx = slits.sigma_x;
    c2 * (2.0 / PI).sqrt() * sx * (-2.0 * sx * sx * p * p).exp() * (1.0 + det.overlap() * (2.0 * p * slits.a).cos())
}

/// Closed-form two-slit coordinate marginal, including the slit-overlap
/// cross term.
pub fn two_slit_marginal_coordinate(slits: &SlitParams, det: &DetectorParams, x: f64) -> f64 {
    let e = joint_overlap(slits, det);
    let sx = slits.sigma_x;
    let g = |c: f64| (-(x - c).powi(2) / (2.0 * sx * sx)).exp();
    (g(slits.a) + g(-slits.a) + 2.0 * e * g(0.0)) / (2.0 * (1.0 + e) * (2.0 * PI).sqrt() * sx)
}
