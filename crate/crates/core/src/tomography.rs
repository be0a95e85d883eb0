//! Linear-inversion tomography with SVD-based adequacy and completeness
//! analysis.
//!
//! Measurement probabilities obey `B vec(ρ) = P`, where `vec` stacks the
//! columns of `ρ`. With `B = U S V⁺`, the rotated data `Q = U⁺P` must vanish
//! beyond the rank `r` (adequacy); the factors `f = V⁺ vec(ρ)` are fixed for
//! `j < r` and free otherwise. Zeroing the free ones gives the regularized
//! solution, and `K_max = 1/(f⁺f)` bounds the Schmidt number of any
//! purification of the state.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::interference::{slit_amplitude, slit_momentum_amplitude, two_slit_norm, SlitParams};
use crate::numerics::{complete_basis, default_grid, eigh, hermitian_deviation, make_grid, svd, ComplexMatrix, Grid1D};

pub const DEFAULT_RANK_THRESHOLD: f64 = 1e-10;
pub const DEFAULT_ADEQUACY_TOL: f64 = 1e-6;
pub const DEFAULT_K_MAX_TOL: f64 = 1e-6;

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-8;
const EIGEN_TOL: f64 = 1e-8;

/// Largest scan: complex undefined factors, and real Hermitian directions.
pub const MAX_UNDEFINED: usize = 4;
pub const MAX_SCAN_DIMENSION: usize = 4;
pub const SCAN_POINTS_PER_DIM: usize = 21;

/// Column-stacked `s²` vector of a square matrix.
pub fn vectorize(rho: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !rho.is_square() {
        return Err(Error::InvalidArgument(format!("cannot vectorize a {}x{} matrix", rho.nrows(), rho.ncols())));
    }
    Ok(rho.iter().copied().collect())
}

pub fn devectorize(v: &[Complex64]) -> Result<ComplexMatrix> {
    let s = (v.len() as f64).sqrt().round() as usize;
    if s * s != v.len() || s == 0 {
        return Err(Error::InvalidArgument(format!("length {} is not a positive square", v.len())));
    }
    Ok(ComplexMatrix::from_column_slice(s, s, v))
}

/// `N × s²` measurement matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolMatrix {
    b: ComplexMatrix,
    s: usize,
}

impl ProtocolMatrix {
    pub fn new(b: ComplexMatrix, s: usize) -> Result<Self> {
        if s == 0 || b.ncols() != s * s {
            return Err(Error::LengthMismatch { expected: s * s, got: b.ncols() });
        }
        if b.nrows() == 0 {
            return Err(Error::InvalidArgument("protocol has no measurements".into()));
        }
        Ok(Self { b, s })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn dimension(&self) -> usize {
        self.s
    }

    pub fn n_measurements(&self) -> usize {
        self.b.nrows()
    }

    /// `B vec(ρ)`; real for Hermitian `ρ` and real-valued densities.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<Vec<Complex64>> {
        if rho.shape() != (self.s, self.s) {
            return Err(Error::LengthMismatch { expected: self.s, got: rho.nrows() });
        }
        let v = nalgebra::DVector::from_vec(vectorize(rho)?);
        Ok((&self.b * v).iter().copied().collect())
    }

    /// Real parts of [`ProtocolMatrix::apply`].
    pub fn probabilities(&self, rho: &ComplexMatrix) -> Result<Vec<f64>> {
        Ok(self.apply(rho)?.iter().map(|z| z.re).collect())
    }

    /// Multiply each row `k` (and so the matching datum) by `scale[k]`.
    pub fn scale_rows(&self, scale: &[f64]) -> Result<Self> {
        if scale.len() != self.b.nrows() {
            return Err(Error::LengthMismatch { expected: self.b.nrows(), got: scale.len() });
        }
        let mut b = self.b.clone();
        for (k, c) in scale.iter().enumerate() {
            b.row_mut(k).scale_mut(*c);
        }
        Ok(Self { b, s: self.s })
    }

    pub fn to_json(&self) -> Value {
        json!({ "s": self.s, "b": complex_rows(&self.b) })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let file: ProtocolFile = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidArgument(format!("protocol JSON: {e}")))?;
        let rows = file.b.len();
        let cols = file.b.first().map_or(0, Vec::len);
        if file.b.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("protocol JSON rows have unequal lengths".into()));
        }
        let b = ComplexMatrix::from_fn(rows, cols, |i, j| Complex64::new(file.b[i][j][0], file.b[i][j][1]));
        Self::new(b, file.s)
    }
}

#[derive(Deserialize)]
struct ProtocolFile {
    s: usize,
    b: Vec<Vec<[f64; 2]>>,
}

/// Measured probabilities as complex data.
pub fn real_data(p: &[f64]) -> Vec<Complex64> {
    p.iter().map(|x| Complex64::new(*x, 0.0)).collect()
}

/// Rows of a complex matrix as `[re, im]` pairs.
pub fn complex_rows(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    m.row_iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()
}

/// Full SVD of a protocol matrix: `U` is `N × N`, `V` is `s² × s²`.
#[derive(Debug, Clone)]
pub struct ProtocolAnalysis {
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub rank: usize,
    pub rank_threshold: f64,
    pub s: usize,
}

impl ProtocolAnalysis {
    pub fn undefined_count(&self) -> usize {
        self.s * self.s - self.rank
    }
}

pub fn analyze(protocol: &ProtocolMatrix, rank_threshold: f64) -> Result<ProtocolAnalysis> {
    let dec = svd(protocol.matrix())?;
    let smax = dec.singular_values.first().copied().unwrap_or(0.0);
    let rank = dec.singular_values.iter().filter(|s| **s > rank_threshold * smax).count();
    Ok(ProtocolAnalysis {
        u: complete_basis(&dec.u),
        v: complete_basis(&dec.v),
        singular_values: dec.singular_values,
        rank,
        rank_threshold,
        s: protocol.dimension(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Adequacy {
    pub adequate: bool,
    pub residual: f64,
}

fn rotated_data(analysis: &ProtocolAnalysis, p: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = analysis.u.nrows();
    if p.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: p.len() });
    }
    Ok((0..n)
        .map(|j| analysis.u.column(j).iter().zip(p).map(|(u, x)| u.conj() * x).sum())
        .collect())
}

/// Relative weight of `Q = U⁺P` beyond the rank.
pub fn check_adequacy(analysis: &ProtocolAnalysis, p: &[Complex64], tol: f64) -> Result<Adequacy> {
    let q = rotated_data(analysis, p)?;
    let total: f64 = q.iter().map(|z| z.norm_sqr()).sum();
    let tail: f64 = q[analysis.rank..].iter().map(|z| z.norm_sqr()).sum();
    let residual = if total > 0.0 { (tail / total).sqrt() } else { 0.0 };
    Ok(Adequacy { adequate: residual <= tol, residual })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    UnconditionallyComplete,
    ConditionallyComplete,
    Incomplete,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructOptions {
    pub adequacy_tol: f64,
    /// `|K_max - 1|` at or below this counts as conditional completeness.
    pub k_max_tol: f64,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        Self { adequacy_tol: DEFAULT_ADEQUACY_TOL, k_max_tol: DEFAULT_K_MAX_TOL }
    }
}

#[derive(Debug, Clone)]
pub struct ReconstructionReport {
    pub adequacy: Adequacy,
    pub rank: usize,
    pub completeness: Completeness,
    /// Defined factors `Q_j / S_j`, `j < r`.
    pub factors: Vec<Complex64>,
    pub undefined_count: usize,
    pub rho_regularized: ComplexMatrix,
    pub k_max: f64,
    pub physical: bool,
}

impl ReconstructionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "adequate": self.adequacy.adequate,
            "residual": self.adequacy.residual,
            "rank": self.rank,
            "completeness": self.completeness,
            "factors": self.factors.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "undefined_count": self.undefined_count,
            "rho_regularized": complex_rows(&self.rho_regularized),
            "k_max": self.k_max,
            "physical": self.physical,
        })
    }
}

/// Hermitian within 1e-10, unit trace within 1e-8, eigenvalues ≥ -1e-8.
pub fn is_physical(rho: &ComplexMatrix) -> bool {
    if !rho.is_square() || hermitian_deviation(rho) > HERMITIAN_TOL {
        return false;
    }
    if (rho.trace() - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
        return false;
    }
    let sym = (rho + rho.adjoint()).scale(0.5);
    match eigh(&sym) {
        Ok(d) => d.values[0] >= -EIGEN_TOL,
        Err(_) => false,
    }
}

/// `tr(ρ²)` for Hermitian `ρ`.
pub fn purity(rho: &ComplexMatrix) -> f64 {
    (rho * rho).trace().re
}

fn factors_of(analysis: &ProtocolAnalysis, p: &[Complex64]) -> Result<Vec<Complex64>> {
    let q = rotated_data(analysis, p)?;
    let s2 = analysis.s * analysis.s;
    Ok((0..s2)
        .map(|j| if j < analysis.rank { q[j] / analysis.singular_values[j] } else { Complex64::new(0.0, 0.0) })
        .collect())
}

fn from_factors(analysis: &ProtocolAnalysis, f: &[Complex64]) -> Result<ComplexMatrix> {
    let v = &analysis.v * nalgebra::DVector::from_column_slice(f);
    devectorize(v.as_slice())
}

pub fn reconstruct(analysis: &ProtocolAnalysis, p: &[Complex64], opts: &ReconstructOptions) -> Result<ReconstructionReport> {
    let adequacy = check_adequacy(analysis, p, opts.adequacy_tol)?;
    if !adequacy.adequate {
        return Err(Error::Inadequate(adequacy.residual));
    }
    let f = factors_of(analysis, p)?;
    let norm: f64 = f.iter().map(|z| z.norm_sqr()).sum();
    if !(norm > 0.0) {
        return Err(Error::ZeroFactorNorm);
    }
    let k_max = 1.0 / norm;
    let rho = from_factors(analysis, &f)?;
    let s2 = analysis.s * analysis.s;
    let completeness = if analysis.rank == s2 {
        Completeness::UnconditionallyComplete
    } else if (k_max - 1.0).abs() <= opts.k_max_tol {
        Completeness::ConditionallyComplete
    } else {
        Completeness::Incomplete
    };
    Ok(ReconstructionReport {
        adequacy,
        rank: analysis.rank,
        completeness,
        factors: f[..analysis.rank].to_vec(),
        undefined_count: s2 - analysis.rank,
        physical: is_physical(&rho),
        rho_regularized: rho,
        k_max,
    })
}

/// Physical states consistent with the data, found by a grid over the free
/// factors.
#[derive(Debug, Clone)]
pub struct CompletionScan {
    pub members: Vec<ComplexMatrix>,
    /// Real dimension of the Hermitian, trace-preserving free directions.
    pub dimension: usize,
    pub grid_points: usize,
    pub min_purity: f64,
    pub max_purity: f64,
}

// Real orthonormal basis (as complex factor vectors) of the free directions
// `z` for which `devec(V_free z)` is Hermitian and traceless.
fn hermitian_free_directions(analysis: &ProtocolAnalysis) -> Result<Vec<Vec<Complex64>>> {
    let (s, r) = (analysis.s, analysis.rank);
    let s2 = s * s;
    let d = s2 - r;
    if d == 0 {
        return Ok(Vec::new());
    }
    // real coordinates t ∈ R^{2d}: z_k = t_{2k} + i t_{2k+1}
    let n_cons = 2 * s2 + 2;
    let mut cons = DMatrix::<f64>::zeros(n_cons, 2 * d);
    for k in 0..d {
        let col = analysis.v.column(r + k);
        for (c, unit) in [(2 * k, Complex64::new(1.0, 0.0)), (2 * k + 1, Complex64::new(0.0, 1.0))] {
            let m = devectorize(&col.iter().map(|z| z * unit).collect::<Vec<_>>())?;
            let anti = &m - m.adjoint();
            for (idx, z) in anti.iter().enumerate() {
                cons[(2 * idx, c)] = z.re;
                cons[(2 * idx + 1, c)] = z.im;
            }
            let tr = m.trace();
            cons[(2 * s2, c)] = tr.re;
            cons[(2 * s2 + 1, c)] = tr.im;
        }
    }
    let dec = nalgebra::SVD::try_new(cons, false, true, 1e-15, 10_000).ok_or(Error::Convergence("svd"))?;
    let vt = dec.v_t.ok_or(Error::Convergence("svd"))?;
    let smax = dec.singular_values.iter().fold(0.0_f64, |a, b| a.max(*b));
    let mut out = Vec::new();
    // nalgebra returns min(rows, cols) right vectors; complete to the null space
    let mut rows: Vec<nalgebra::DVector<f64>> = Vec::new();
    for (i, sv) in dec.singular_values.iter().enumerate() {
        if *sv > 1e-10 * smax.max(1.0) {
            rows.push(vt.row(i).transpose());
        }
    }
    let dim = 2 * d;
    let mut basis: Vec<nalgebra::DVector<f64>> = Vec::new();
    for e in 0..dim {
        let mut v = nalgebra::DVector::<f64>::zeros(dim);
        v[e] = 1.0;
        for _ in 0..2 {
            for b in rows.iter().chain(basis.iter()) {
                let c = b.dot(&v);
                v.axpy(-c, b, 1.0);
            }
        }
        let n = v.norm();
        if n > 1e-6 {
            basis.push(v / n);
        }
    }
    for t in basis {
        out.push((0..d).map(|k| Complex64::new(t[2 * k], t[2 * k + 1])).collect());
    }
    Ok(out)
}

/// Scan `SCAN_POINTS_PER_DIM` points per real free direction inside the unit
/// ball around the regularized solution and keep the physical completions.
pub fn scan_completions(analysis: &ProtocolAnalysis, p: &[Complex64]) -> Result<CompletionScan> {
    let d = analysis.undefined_count();
    if d > MAX_UNDEFINED {
        return Err(Error::ScanDimension(d));
    }
    let f = factors_of(analysis, p)?;
    let rho_reg = from_factors(analysis, &f)?;
    let dirs = hermitian_free_directions(analysis)?;
    if dirs.len() > MAX_SCAN_DIMENSION {
        return Err(Error::ScanDimension(dirs.len()));
    }
    let (s, r) = (analysis.s, analysis.rank);
    let dir_mats: Vec<ComplexMatrix> = dirs
        .iter()
        .map(|z| {
            let mut full = vec![Complex64::new(0.0, 0.0); s * s];
            full[r..].copy_from_slice(z);
            from_factors(analysis, &full)
        })
        .collect::<Result<_>>()?;
    let n = SCAN_POINTS_PER_DIM;
    let step = 2.0 / (n - 1) as f64;
    let total = n.pow(dirs.len() as u32);
    let mut members = Vec::new();
    let (mut pmin, mut pmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for cell in 0..total {
        let mut idx = cell;
        let mut t = Vec::with_capacity(dirs.len());
        for _ in 0..dirs.len() {
            t.push(-1.0 + step * (idx % n) as f64);
            idx /= n;
        }
        if t.iter().map(|x| x * x).sum::<f64>() > 1.0 + 1e-12 {
            continue;
        }
        let mut rho = rho_reg.clone();
        for (c, m) in t.iter().zip(&dir_mats) {
            rho += m.scale(*c);
        }
        if is_physical(&rho) {
            let pu = purity(&rho);
            pmin = pmin.min(pu);
            pmax = pmax.max(pu);
            members.push(rho);
        }
    }
    Ok(CompletionScan { members, dimension: dirs.len(), grid_points: n, min_purity: pmin, max_purity: pmax })
}

/// Two-slit protocol in the basis of the symmetric and antisymmetric
/// superpositions: `n` coordinate-density rows followed by `n`
/// momentum-density rows, each scaled by its trapezoid weight.
#[derive(Debug, Clone)]
pub struct InterferenceProtocol {
    pub protocol: ProtocolMatrix,
    pub coordinate: Grid1D,
    pub momentum: Grid1D,
}

impl InterferenceProtocol {
    pub fn probabilities(&self, rho: &ComplexMatrix) -> Result<Vec<f64>> {
        self.protocol.probabilities(rho)
    }
}

pub fn interference_protocol(slits: &SlitParams, n_points: usize) -> Result<InterferenceProtocol> {
    if slits.m != 2 {
        return Err(Error::InvalidArgument(format!(
            "interference protocol is defined on the two-slit basis, got m = {}",
            slits.m
        )));
    }
    let (a, sigma) = (slits.a, slits.sigma_x);
    let coordinate = default_grid(&slits.centers(), sigma, n_points)?;
    let momentum = make_grid(0.0, 10.0 / (2.0 * sigma), n_points)?;
    let c0 = two_slit_norm(a, sigma).sqrt() / 2.0_f64.sqrt();
    let c1 = (1.0 / (1.0 - (-a * a / (2.0 * sigma * sigma)).exp())).sqrt() / 2.0_f64.sqrt();
    let coord_basis = |x: f64| {
        let (l, r) = (slit_amplitude(sigma, a, x), slit_amplitude(sigma, -a, x));
        [Complex64::new(c0 * (l + r), 0.0), Complex64::new(c1 * (l - r), 0.0)]
    };
    let mom_basis = |p: f64| {
        let (l, r) = (slit_momentum_amplitude(sigma, a, p), slit_momentum_amplitude(sigma, -a, p));
        [(l + r) * c0, (l - r) * c1]
    };
    let rows = 2 * n_points;
    let mut b = ComplexMatrix::zeros(rows, 4);
    for (block, grid) in [(0, &coordinate), (1, &momentum)] {
        let w = grid.weights();
        for (k, x) in grid.points().into_iter().enumerate() {
            let psi = if block == 0 { coord_basis(x) } else { mom_basis(x) };
            let row = block * n_points + k;
            for j in 0..2 {
                for i in 0..2 {
                    b[(row, i + 2 * j)] = psi[i] * psi[j].conj() * w[k];
                }
            }
        }
    }
    Ok(InterferenceProtocol { protocol: ProtocolMatrix::new(b, 2)?, coordinate, momentum })
}
