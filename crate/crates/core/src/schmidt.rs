//! Schmidt decomposition of particle-detector states and the information
//! measures built on its weights.
//!
//! A normalized joint amplitude `ψ(x, ξ)` is written as
//! `Σ_k √λ_k u_k(x) v_k(ξ)` with orthonormal mode families and weights
//! `λ_k ≥ 0` summing to one. The number of non-negligible weights never
//! exceeds the slit count.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::interference::{DetectorParams, JointGrids, JointState, Representation, SlitParams};
use crate::numerics::{eigh, hermitian_deviation, low_rank_svd, Axis, ComplexMatrix, SampledWave};

/// Weights below this are dropped from numerical decompositions.
pub const DEFAULT_TRUNCATION: f64 = 1e-12;

/// Adjacent weights closer than this are reported as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Residual column norm (relative) at which the rank-revealing SVD stops.
const RANK_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtDecomposition {
    weights: Vec<f64>,
    particle_axis: Axis,
    detector_axis: Axis,
    particle_modes: Vec<Vec<Complex64>>,
    detector_modes: Vec<Vec<Complex64>>,
    representation: Representation,
    truncation_threshold: f64,
}

impl SchmidtDecomposition {
    /// Weights in descending order.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn particle_axis(&self) -> &Axis {
        &self.particle_axis
    }

    pub fn detector_axis(&self) -> &Axis {
        &self.detector_axis
    }

    pub fn particle_mode(&self, k: usize) -> &[Complex64] {
        &self.particle_modes[k]
    }

    pub fn detector_mode(&self, k: usize) -> &[Complex64] {
        &self.detector_modes[k]
    }

    /// Particle mode as a wave, when the particle axis is a grid.
    pub fn particle_wave(&self, k: usize) -> Option<SampledWave> {
        let grid = *self.particle_axis.grid()?;
        SampledWave::new(grid, self.particle_modes[k].clone()).ok()
    }

    pub fn detector_wave(&self, k: usize) -> Option<SampledWave> {
        let grid = *self.detector_axis.grid()?;
        SampledWave::new(grid, self.detector_modes[k].clone()).ok()
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn truncation_threshold(&self) -> f64 {
        self.truncation_threshold
    }

    /// True when two retained weights coincide within [`DEGENERACY_TOL`]; the
    /// individual modes of such a pair are then arbitrary within their span.
    pub fn is_degenerate(&self) -> bool {
        self.weights.windows(2).any(|w| (w[0] - w[1]).abs() < DEGENERACY_TOL)
    }

    pub fn entropy(&self) -> f64 {
        entropy_unchecked(&self.weights)
    }

    pub fn schmidt_number(&self) -> f64 {
        1.0 / self.weights.iter().map(|l| l * l).sum::<f64>()
    }

    pub fn information(&self) -> f64 {
        self.schmidt_number().log2()
    }

    /// `Σ_k √λ_k u_k(x) v_k(ξ)` sampled on the axes.
    pub fn joint_amplitudes(&self) -> ComplexMatrix {
        let (rows, cols) = (self.particle_axis.len(), self.detector_axis.len());
        let mut out = ComplexMatrix::zeros(rows, cols);
        for (k, l) in self.weights.iter().enumerate() {
            let s = l.sqrt();
            for j in 0..cols {
                let v = self.detector_modes[k][j] * s;
                for i in 0..rows {
                    out[(i, j)] += self.particle_modes[k][i] * v;
                }
            }
        }
        out
    }
}

/// `∫ conj(a) b` over an axis.
pub fn mode_inner(axis: &Axis, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    axis.weights()
        .iter()
        .zip(a.iter().zip(b))
        .map(|(w, (x, y))| x.conj() * y * *w)
        .sum()
}

fn fix_phase(particle: &mut [Complex64], detector: &mut [Complex64]) {
    let peak = particle
        .iter()
        .copied()
        .fold(Complex64::new(0.0, 0.0), |acc, z| if z.norm() > acc.norm() { z } else { acc });
    if peak.norm() == 0.0 {
        return;
    }
    let phase = peak / peak.norm();
    particle.iter_mut().for_each(|z| *z /= phase);
    detector.iter_mut().for_each(|z| *z *= phase);
}

/// Schmidt decomposition of a sampled joint state through the SVD of its
/// measure-weighted amplitude matrix. Weights at or below `threshold` are
/// dropped; modes are continuum-normalized with the largest particle-mode
/// component made real and positive.
pub fn numerical_schmidt(state: &JointState, threshold: f64) -> Result<SchmidtDecomposition> {
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidArgument(format!("joint state is not normalized (norm² = {norm})")));
    }
    let wp: Vec<f64> = state.particle_axis().weights().iter().map(|w| w.sqrt()).collect();
    let wd: Vec<f64> = state.detector_axis().weights().iter().map(|w| w.sqrt()).collect();
    let dec = low_rank_svd(&state.weighted_amplitudes(), RANK_TOL)?;

    let mut weights = Vec::new();
    let mut particle_modes = Vec::new();
    let mut detector_modes = Vec::new();
    for (k, s) in dec.singular_values.iter().enumerate() {
        let lambda = s * s;
        if lambda <= threshold {
            continue;
        }
        let mut u: Vec<Complex64> = dec.u.column(k).iter().zip(&wp).map(|(z, w)| z / *w).collect();
        let mut v: Vec<Complex64> = dec.v.column(k).iter().zip(&wd).map(|(z, w)| z.conj() / *w).collect();
        fix_phase(&mut u, &mut v);
        weights.push(lambda);
        particle_modes.push(u);
        detector_modes.push(v);
    }
    Ok(SchmidtDecomposition {
        weights,
        particle_axis: *state.particle_axis(),
        detector_axis: *state.detector_axis(),
        particle_modes,
        detector_modes,
        representation: state.representation(),
        truncation_threshold: threshold,
    })
}

/// Closed-form two-slit weights `(λ_0, λ_1)`.
pub fn two_slit_weights(slits: &SlitParams, det: &DetectorParams) -> (f64, f64) {
    let ea = slits.overlap();
    let eb = det.overlap();
    let eab = ea * eb;
    let denom = 2.0 * (1.0 + eab);
    ((1.0 + ea) * (1.0 + eb) / denom, (1.0 - ea) * (1.0 - eb) / denom)
}

// cos- and sin-type far-field modes exp(-σ²p²)·{cos, sin}(p c); when the
// sine mode degenerates (c → 0) its normalized limit p·exp(-σ²p²) is used.
fn analytic_mode(axis: &Axis, sigma: f64, center: f64, odd: bool) -> Result<Vec<Complex64>> {
    let points = axis.points();
    let degenerate_odd = odd && (1.0 - (-center * center / (2.0 * sigma * sigma)).exp()) < 1e-12;
    let raw: Vec<Complex64> = points
        .iter()
        .map(|&p| {
            let env = (-sigma * sigma * p * p).exp();
            let f = if !odd {
                (p * center).cos()
            } else if degenerate_odd {
                p
            } else {
                (p * center).sin()
            };
            Complex64::new(env * f, 0.0)
        })
        .collect();
    let n = mode_inner(axis, &raw, &raw).re;
    if !(n > 0.0) {
        return Err(Error::InvalidArgument("analytic mode vanishes on the grid".into()));
    }
    Ok(raw.into_iter().map(|z| z / n.sqrt()).collect())
}

/// Analytic two-slit decomposition in the momentum representation: modes
/// `exp(-σ²p²)cos(pa)` and `exp(-σ²p²)sin(pa)` (likewise for the detector
/// with `b`), sampled on `grids` and normalized by quadrature.
///
/// `cos(p_x a + p_ξ b) = cos·cos − sin·sin`, so the second detector mode
/// carries a minus sign to make the modes reproduce the joint amplitude.
pub fn analytic_two_slit_schmidt(
    slits: &SlitParams,
    det: &DetectorParams,
    grids: &JointGrids,
) -> Result<SchmidtDecomposition> {
    if slits.m != 2 {
        return Err(Error::InvalidArgument(format!(
            "analytic Schmidt modes exist for two slits only, got m = {}",
            slits.m
        )));
    }
    let pa = Axis::Continuous(grids.particle);
    let da = Axis::Continuous(grids.detector);
    let (l0, l1) = two_slit_weights(slits, det);
    let p0 = analytic_mode(&pa, slits.sigma_x, slits.a, false)?;
    let p1 = analytic_mode(&pa, slits.sigma_x, slits.a, true)?;
    let d0 = analytic_mode(&da, det.sigma_xi, det.b, false)?;
    let d1: Vec<Complex64> = analytic_mode(&da, det.sigma_xi, det.b, true)?.into_iter().map(|z| -z).collect();
    Ok(SchmidtDecomposition {
        weights: vec![l0, l1],
        particle_axis: pa,
        detector_axis: da,
        particle_modes: vec![p0, p1],
        detector_modes: vec![d0, d1],
        representation: Representation::Momentum,
        truncation_threshold: 0.0,
    })
}

fn validate_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidWeights("empty weight vector".into()));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
        return Err(Error::InvalidWeights(format!("negative or NaN weight {w}")));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidWeights(format!("weights sum to {sum}, expected 1")));
    }
    Ok(())
}

fn entropy_unchecked(weights: &[f64]) -> f64 {
    -weights.iter().filter(|l| **l > 0.0).map(|l| l * l.log2()).sum::<f64>()
}

/// `S = -Σ λ_k log₂ λ_k` (with `0 log 0 = 0`).
pub fn entropy(weights: &[f64]) -> Result<f64> {
    validate_weights(weights)?;
    Ok(entropy_unchecked(weights))
}

/// `K = 1 / Σ λ_k²`.
pub fn schmidt_number(weights: &[f64]) -> Result<f64> {
    validate_weights(weights)?;
    Ok(1.0 / weights.iter().map(|l| l * l).sum::<f64>())
}

/// `I = log₂ K`.
pub fn information(weights: &[f64]) -> Result<f64> {
    Ok(schmidt_number(weights)?.log2())
}

/// Particle density as the mixture `Σ_k λ_k |u_k|²` of mode densities.
pub fn reconstruct_marginal(decomp: &SchmidtDecomposition) -> Vec<f64> {
    let n = decomp.particle_axis.len();
    let mut out = vec![0.0; n];
    for (k, l) in decomp.weights.iter().enumerate() {
        for (o, z) in out.iter_mut().zip(&decomp.particle_modes[k]) {
            *o += l * z.norm_sqr();
        }
    }
    out
}

/// Reduced density matrix of the particle, `ρ(p, p') = Σ λ_k u_k(p) u_k*(p')`,
/// sampled on the particle axis (a kernel, not yet multiplied by the measure).
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity {
    pub axis: Axis,
    pub matrix: ComplexMatrix,
}

impl ReducedDensity {
    /// `∫ ρ(p, p) dp`.
    pub fn trace(&self) -> f64 {
        self.axis.weights().iter().enumerate().map(|(i, w)| w * self.matrix[(i, i)].re).sum()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        hermitian_deviation(&self.matrix)
    }

    /// `∫∫ |ρ(p, p')|² dp dp'`.
    pub fn purity(&self) -> f64 {
        let w = self.axis.weights();
        let mut total = 0.0;
        for j in 0..w.len() {
            for i in 0..w.len() {
                total += w[i] * w[j] * self.matrix[(i, j)].norm_sqr();
            }
        }
        total
    }

    /// Eigenvalues (descending) and continuum-normalized eigenfunctions of the
    /// integral operator with kernel `ρ`.
    pub fn spectrum(&self) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
        let sw: Vec<f64> = self.axis.weights().iter().map(|w| w.sqrt()).collect();
        let n = sw.len();
        let sym = ComplexMatrix::from_fn(n, n, |i, j| self.matrix[(i, j)] * (sw[i] * sw[j]));
        let dec = eigh(&sym)?;
        let mut values = Vec::with_capacity(n);
        let mut vectors = Vec::with_capacity(n);
        for k in (0..n).rev() {
            values.push(dec.values[k]);
            vectors.push(dec.vectors.column(k).iter().zip(&sw).map(|(z, w)| z / *w).collect());
        }
        Ok((values, vectors))
    }
}

pub fn reduced_density(decomp: &SchmidtDecomposition) -> ReducedDensity {
    let n = decomp.particle_axis.len();
    let mut matrix = ComplexMatrix::zeros(n, n);
    for (k, l) in decomp.weights.iter().enumerate() {
        let u = &decomp.particle_modes[k];
        for j in 0..n {
            let c = u[j].conj() * *l;
            for i in 0..n {
                matrix[(i, j)] += u[i] * c;
            }
        }
    }
    ReducedDensity { axis: decomp.particle_axis, matrix }
}

/// `λ_0` expected in the limit of well-separated slits and spots: uniform
/// weights `1/m`.
pub fn saturated_weight(m: usize) -> f64 {
    1.0 / m as f64
}

/// Schmidt number of a two-mode split with weights `(λ, 1-λ)`.
pub fn two_mode_schmidt_number(lambda0: f64) -> f64 {
    1.0 / (lambda0 * lambda0 + (1.0 - lambda0).powi(2))
}
