use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, column-major.
pub type ComplexMatrix = DMatrix<Complex64>;

const SVD_EPS: f64 = 1e-15;
const MAX_ITER: usize = 10_000;

/// Thin singular value decomposition `M = U diag(s) V⁺` with `s` descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut us = self.u.clone();
        for (k, s) in self.singular_values.iter().enumerate() {
            us.column_mut(k).scale_mut(*s);
        }
        us * self.v.adjoint()
    }
}

pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if m.is_empty() {
        return Err(Error::InvalidArgument("svd of an empty matrix".into()));
    }
    let dec = SVD::try_new(m.clone(), true, true, SVD_EPS, MAX_ITER).ok_or(Error::Convergence("svd"))?;
    let u = dec.u.ok_or(Error::Convergence("svd"))?;
    let v = dec.v_t.ok_or(Error::Convergence("svd"))?.adjoint();
    let s: Vec<f64> = dec.singular_values.iter().copied().collect();
    Ok(sorted_svd(u, s, v))
}

fn sorted_svd(u: ComplexMatrix, s: Vec<f64>, v: ComplexMatrix) -> Svd {
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].total_cmp(&s[a]));
    let u = ComplexMatrix::from_fn(u.nrows(), order.len(), |i, k| u[(i, order[k])]);
    let v = ComplexMatrix::from_fn(v.nrows(), order.len(), |i, k| v[(i, order[k])]);
    let singular_values = order.iter().map(|&k| s[k].max(0.0)).collect();
    Svd { u, singular_values, v }
}

/// SVD of a numerically low-rank matrix.
///
/// Column-pivoted Gram-Schmidt (with re-orthogonalization) finds an
/// orthonormal basis `Q` of the column space until every residual column is
/// below `rel_tol · ‖M‖_F`; the small core `Q⁺M` is then decomposed densely.
/// Cost is `O(rows · cols · rank)`.
pub fn low_rank_svd(m: &ComplexMatrix, rel_tol: f64) -> Result<Svd> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument("svd of an empty matrix".into()));
    }
    let total = m.norm_squared();
    let max_rank = rows.min(cols);
    let mut resid = m.clone();
    let mut basis: Vec<DVector<Complex64>> = Vec::new();
    while basis.len() < max_rank {
        let (j, best) = (0..cols)
            .map(|j| (j, resid.column(j).norm_squared()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= rel_tol * rel_tol * total || best <= 0.0 {
            break;
        }
        let mut q: DVector<Complex64> = resid.column(j).into_owned();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dotc(&q);
                q.axpy(-c, b, Complex64::new(1.0, 0.0));
            }
        }
        let norm = q.norm();
        if norm == 0.0 {
            break;
        }
        q.unscale_mut(norm);
        // deflate: resid -= q (q⁺ resid)
        let proj = q.adjoint() * &resid;
        resid.ger(Complex64::new(-1.0, 0.0), &q, &proj.transpose(), Complex64::new(1.0, 0.0));
        basis.push(q);
    }
    if basis.is_empty() {
        return Ok(Svd {
            u: ComplexMatrix::zeros(rows, 0),
            singular_values: Vec::new(),
            v: ComplexMatrix::zeros(cols, 0),
        });
    }
    let q = ComplexMatrix::from_columns(&basis);
    let core = q.adjoint() * m;
    let small = svd(&core)?;
    let keep = small.singular_values.len();
    Ok(Svd {
        u: &q * small.u.columns(0, keep),
        singular_values: small.singular_values,
        v: small.v,
    })
}

/// Extend the orthonormal columns of `q` to a full unitary `n × n` matrix.
pub fn complete_basis(q: &ComplexMatrix) -> ComplexMatrix {
    let n = q.nrows();
    let mut cols: Vec<DVector<Complex64>> = q.column_iter().map(|c| c.into_owned()).collect();
    let mut candidates: Vec<(usize, f64)> = (0..n)
        .map(|i| (i, 1.0 - q.row(i).norm_squared()))
        .collect();
    candidates.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    for (i, _) in candidates {
        if cols.len() == n {
            break;
        }
        let mut v = DVector::<Complex64>::zeros(n);
        v[i] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for c in &cols {
                let proj = c.dotc(&v);
                v.axpy(-proj, c, Complex64::new(1.0, 0.0));
            }
        }
        let norm = v.norm();
        if norm > 0.1 {
            v.unscale_mut(norm);
            cols.push(v);
        }
    }
    ComplexMatrix::from_columns(&cols)
}

/// Largest entry of `|H - H⁺|`.
pub fn hermitian_deviation(h: &ComplexMatrix) -> f64 {
    let n = h.nrows();
    let mut dev = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigh {
    /// ascending
    pub values: Vec<f64>,
    /// column `k` pairs with `values[k]`
    pub vectors: ComplexMatrix,
}

pub const HERMITIAN_TOL: f64 = 1e-12;

pub fn eigh(h: &ComplexMatrix) -> Result<Eigh> {
    if !h.is_square() || h.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "eigh needs a non-empty square matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let scale = h.iter().fold(1.0_f64, |acc, z| acc.max(z.norm()));
    let dev = hermitian_deviation(h);
    if dev > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(dev));
    }
    let sym = (h + h.adjoint()).scale(0.5);
    let dec = SymmetricEigen::try_new(sym, SVD_EPS, MAX_ITER).ok_or(Error::Convergence("eigh"))?;
    let mut order: Vec<usize> = (0..h.nrows()).collect();
    order.sort_by(|&a, &b| dec.eigenvalues[a].total_cmp(&dec.eigenvalues[b]));
    let values = order.iter().map(|&k| dec.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(h.nrows(), h.ncols(), |i, k| dec.eigenvectors[(i, order[k])]);
    Ok(Eigh { values, vectors })
}
