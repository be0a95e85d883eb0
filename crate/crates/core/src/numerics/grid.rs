use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// Uniform one-dimensional grid with both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n_points: usize,
    x_min: f64,
    x_max: f64,
    spacing: f64,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if n_points < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 points, got {n_points}"
            )));
        }
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "grid bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        Ok(Self {
            n_points,
            x_min,
            x_max,
            spacing: (x_max - x_min) / (n_points - 1) as f64,
        })
    }

    /// Grid starting at `x_min` with the given spacing.
    pub fn from_spacing(x_min: f64, spacing: f64, n_points: usize) -> Result<Self> {
        if !(spacing > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "grid spacing must be positive, got {spacing}"
            )));
        }
        let mut grid = Self::new(x_min, x_min + spacing * (n_points.max(2) - 1) as f64, n_points)?;
        grid.spacing = spacing;
        Ok(grid)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + self.spacing * i as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.point(i)).collect()
    }

    /// Trapezoid-rule weights.
    pub fn weights(&self) -> Vec<f64> {
        let mut w = vec![self.spacing; self.n_points];
        w[0] *= 0.5;
        w[self.n_points - 1] *= 0.5;
        w
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_min && x <= self.x_max
    }
}

/// Symmetric grid `[center - half_width, center + half_width]`.
pub fn make_grid(center: f64, half_width: f64, n_points: usize) -> Result<Grid1D> {
    if !(half_width > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "half_width must be positive, got {half_width}"
        )));
    }
    Grid1D::new(center - half_width, center + half_width, n_points)
}

/// Number of standard deviations kept beyond the outermost center.
///
/// At ten density standard deviations the amplitude of a Gaussian has fallen
/// to `exp(-25) ≈ 1.4e-11`, below the leakage threshold of the transforms.
pub const DEFAULT_TAIL_SIGMAS: f64 = 10.0;

pub const DEFAULT_GRID_POINTS: usize = 1024;

/// Grid covering Gaussians centred at `centers` whose densities have standard
/// deviation `sigma`.
pub fn default_grid(centers: &[f64], sigma: f64, n_points: usize) -> Result<Grid1D> {
    let reach = centers.iter().fold(0.0_f64, |acc, c| acc.max(c.abs()));
    make_grid(0.0, reach + DEFAULT_TAIL_SIGMAS * sigma, n_points)
}

/// Trapezoid-rule integral of samples over `grid`.
pub fn quadrature<T>(f: &[T], grid: &Grid1D) -> Result<T>
where
    T: Copy + Zero + Add<Output = T> + Mul<f64, Output = T>,
{
    if f.len() != grid.n_points {
        return Err(Error::LengthMismatch {
            expected: grid.n_points,
            got: f.len(),
        });
    }
    let n = f.len();
    let interior = f[1..n - 1].iter().fold(T::zero(), |acc, &v| acc + v);
    Ok((interior + (f[0] + f[n - 1]) * 0.5) * grid.spacing)
}

/// One axis of a bipartite state: either a sampled continuous variable or a
/// finite register (a qubit, say) whose "integral" is a plain sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Axis {
    Continuous(Grid1D),
    Discrete(usize),
}

impl Axis {
    pub fn len(&self) -> usize {
        match self {
            Axis::Continuous(g) => g.n_points(),
            Axis::Discrete(n) => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weights(&self) -> Vec<f64> {
        match self {
            Axis::Continuous(g) => g.weights(),
            Axis::Discrete(n) => vec![1.0; *n],
        }
    }

    /// Abscissae: grid points, or level indices for a register.
    pub fn points(&self) -> Vec<f64> {
        match self {
            Axis::Continuous(g) => g.points(),
            Axis::Discrete(n) => (0..*n).map(|i| i as f64).collect(),
        }
    }

    pub fn grid(&self) -> Option<&Grid1D> {
        match self {
            Axis::Continuous(g) => Some(g),
            Axis::Discrete(_) => None,
        }
    }

    pub fn integrate(&self, f: &[f64]) -> Result<f64> {
        match self {
            Axis::Continuous(g) => quadrature(f, g),
            Axis::Discrete(n) => {
                if f.len() != *n {
                    return Err(Error::LengthMismatch { expected: *n, got: f.len() });
                }
                Ok(f.iter().sum())
            }
        }
    }
}

/// Complex amplitudes on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWave {
    grid: Grid1D,
    amplitudes: Vec<Complex64>,
}

impl SampledWave {
    pub fn new(grid: Grid1D, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.n_points() {
            return Err(Error::LengthMismatch {
                expected: grid.n_points(),
                got: amplitudes.len(),
            });
        }
        Ok(Self { grid, amplitudes })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let amplitudes = grid.points().into_iter().map(f).collect();
        Self { grid, amplitudes }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        quadrature(&self.density(), &self.grid).expect("lengths agree by construction")
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_sqr();
        if !(n > 0.0) {
            return Err(Error::InvalidArgument("cannot normalize a zero wave".into()));
        }
        let s = n.sqrt().recip();
        self.amplitudes.iter_mut().for_each(|z| *z *= s);
        Ok(self)
    }

    /// Continuum inner product `∫ conj(self) other`.
    pub fn inner(&self, other: &SampledWave) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::InvalidArgument("inner product of waves on different grids".into()));
        }
        let prod: Vec<Complex64> = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .collect();
        quadrature(&prod, &self.grid)
    }

    /// Largest boundary amplitude relative to the L² norm.
    pub fn edge_ratio(&self) -> f64 {
        let n = self.amplitudes.len();
        let edge = self.amplitudes[0].norm().max(self.amplitudes[n - 1].norm());
        let norm = self.norm_sqr().sqrt();
        if norm > 0.0 {
            edge / norm
        } else {
            0.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn make_grid_examples() {
        let g = make_grid(0.0, 1.0, 3).unwrap();
        assert_eq!(g.points(), vec![-1.0, 0.0, 1.0]);

        let g = make_grid(0.0, 20.0, 1024).unwrap();
        assert_relative_eq!(g.spacing(), 40.0 / 1023.0, max_relative = 1e-12);

        let g = make_grid(5.0, 2.0, 5).unwrap();
        assert_eq!(g.points(), vec![3.0, 4.0, 5.0, 6.0, 7.0]);
    }

    #[test]
    fn make_grid_rejects_bad_arguments() {
        assert!(matches!(make_grid(0.0, 1.0, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_grid(0.0, 0.0, 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_grid(0.0, -2.0, 10), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn spacing_matches_endpoints() {
        let g = Grid1D::from_spacing(-3.0, 0.125, 49).unwrap();
        assert_relative_eq!(g.point(48), g.x_max(), max_relative = 1e-12);
        assert_relative_eq!((g.x_max() - g.x_min()) / 48.0, g.spacing(), max_relative = 1e-12);
    }

    #[test]
    fn quadrature_examples() {
        for n in [2, 3, 17, 100] {
            let g = Grid1D::new(0.0, 1.0, n).unwrap();
            assert_relative_eq!(quadrature(&vec![1.0; n], &g).unwrap(), 1.0, epsilon = 1e-14);
        }

        let g = Grid1D::new(-10.0, 10.0, 1024).unwrap();
        let gauss: Vec<f64> = g
            .points()
            .iter()
            .map(|x| (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt())
            .collect();
        assert!((quadrature(&gauss, &g).unwrap() - 1.0).abs() < 1e-10);

        let g = Grid1D::new(-1.0, 1.0, 101).unwrap();
        assert!(quadrature(&g.points(), &g).unwrap().abs() < 1e-14);
    }

    #[test]
    fn quadrature_length_mismatch() {
        let g = Grid1D::new(0.0, 1.0, 5).unwrap();
        assert_eq!(
            quadrature(&[1.0, 2.0], &g),
            Err(Error::LengthMismatch { expected: 5, got: 2 })
        );
    }

    #[test]
    fn complex_quadrature() {
        let g = Grid1D::new(0.0, 1.0, 11).unwrap();
        let f = vec![Complex64::new(1.0, -2.0); 11];
        let v = quadrature(&f, &g).unwrap();
        assert_relative_eq!(v.re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(v.im, -2.0, epsilon = 1e-14);
    }

    #[test]
    fn discrete_axis_sums() {
        let ax = Axis::Discrete(3);
        assert_eq!(ax.integrate(&[0.25, 0.5, 0.25]).unwrap(), 1.0);
        assert_eq!(ax.weights(), vec![1.0; 3]);
    }
}
