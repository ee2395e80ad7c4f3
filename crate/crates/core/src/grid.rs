//! Discretization of the domain: uniform interior grids on an interval or a
//! rectangle, nodal fields with implied homogeneous Dirichlet data, and their
//! sine-coefficient counterparts.

use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};

/// Interval domain (0, L) with `n_interior` uniformly spaced interior nodes
/// and a spectral truncation of `n_modes` sine modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub length: f64,
    pub n_interior: usize,
    pub n_modes: usize,
}

impl Grid1D {
    pub fn new(length: f64, n_interior: usize, n_modes: usize) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(CoreError::Config(format!(
                "domain length must be positive and finite, got {length}"
            )));
        }
        if n_interior == 0 {
            return Err(CoreError::Config("need at least one interior node".into()));
        }
        if n_modes == 0 || n_modes > n_interior {
            return Err(CoreError::Config(format!(
                "mode count must satisfy 1 <= K <= n_interior, got K={n_modes}, n={n_interior}"
            )));
        }
        Ok(Self {
            length,
            n_interior,
            n_modes,
        })
    }

    /// Uniform spacing h = L/(n+1).
    pub fn spacing(&self) -> f64 {
        self.length / (self.n_interior as f64 + 1.0)
    }

    /// Coordinate of interior node j (0-based).
    pub fn node(&self, j: usize) -> f64 {
        (j as f64 + 1.0) * self.spacing()
    }

    /// Dirichlet-Laplacian eigenvalue mu_k = (k*pi/L)^2 for 1 <= k <= K.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.n_modes {
            return Err(CoreError::Config(format!(
                "mode index {k} out of range 1..={}",
                self.n_modes
            )));
        }
        let kf = k as f64 * std::f64::consts::PI / self.length;
        Ok(kf * kf)
    }
}

/// Rectangle (0, Lx) x (0, Ly); tensor-product grid and sine basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2DRect {
    pub lengths: (f64, f64),
    pub n_interior: (usize, usize),
    pub n_modes: (usize, usize),
}

impl Grid2DRect {
    pub fn new(
        lengths: (f64, f64),
        n_interior: (usize, usize),
        n_modes: (usize, usize),
    ) -> Result<Self> {
        let x = Grid1D::new(lengths.0, n_interior.0, n_modes.0)?;
        let y = Grid1D::new(lengths.1, n_interior.1, n_modes.1)?;
        let _ = (x, y);
        Ok(Self {
            lengths,
            n_interior,
            n_modes,
        })
    }

    pub fn axis_x(&self) -> Grid1D {
        Grid1D {
            length: self.lengths.0,
            n_interior: self.n_interior.0,
            n_modes: self.n_modes.0,
        }
    }

    pub fn axis_y(&self) -> Grid1D {
        Grid1D {
            length: self.lengths.1,
            n_interior: self.n_interior.1,
            n_modes: self.n_modes.1,
        }
    }

    /// mu_{kx,ky} = (kx*pi/Lx)^2 + (ky*pi/Ly)^2.
    pub fn eigenvalue(&self, kx: usize, ky: usize) -> Result<f64> {
        Ok(self.axis_x().eigenvalue(kx)? + self.axis_y().eigenvalue(ky)?)
    }
}

/// Supported domains. Linear indices run x-fastest for both nodes and modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Grid {
    One(Grid1D),
    Rect(Grid2DRect),
}

impl Grid {
    pub fn interval(length: f64, n_interior: usize, n_modes: usize) -> Result<Self> {
        Ok(Grid::One(Grid1D::new(length, n_interior, n_modes)?))
    }

    pub fn rectangle(
        lengths: (f64, f64),
        n_interior: (usize, usize),
        n_modes: (usize, usize),
    ) -> Result<Self> {
        Ok(Grid::Rect(Grid2DRect::new(lengths, n_interior, n_modes)?))
    }

    pub fn node_count(&self) -> usize {
        match self {
            Grid::One(g) => g.n_interior,
            Grid::Rect(g) => g.n_interior.0 * g.n_interior.1,
        }
    }

    pub fn mode_count(&self) -> usize {
        match self {
            Grid::One(g) => g.n_modes,
            Grid::Rect(g) => g.n_modes.0 * g.n_modes.1,
        }
    }

    /// Dirichlet-Laplacian eigenvalue of the linear mode index (0-based).
    pub fn mode_mu(&self, m: usize) -> f64 {
        match self {
            Grid::One(g) => {
                let k = (m + 1) as f64 * std::f64::consts::PI / g.length;
                k * k
            }
            Grid::Rect(g) => {
                let kx = (m % g.n_modes.0 + 1) as f64 * std::f64::consts::PI / g.lengths.0;
                let ky = (m / g.n_modes.0 + 1) as f64 * std::f64::consts::PI / g.lengths.1;
                kx * kx + ky * ky
            }
        }
    }

    /// Squared-norm weight of one basis mode: integral of sin^2 over the domain.
    pub fn parseval_weight(&self) -> f64 {
        match self {
            Grid::One(g) => g.length / 2.0,
            Grid::Rect(g) => g.lengths.0 * g.lengths.1 / 4.0,
        }
    }

    /// Domain measure |Omega|.
    pub fn measure(&self) -> f64 {
        match self {
            Grid::One(g) => g.length,
            Grid::Rect(g) => g.lengths.0 * g.lengths.1,
        }
    }

    /// Integral of the linear mode's basis function over the domain.
    /// For sin(k*pi*x/L) this is L(1-(-1)^k)/(k*pi); products for the rectangle.
    pub fn mode_integral(&self, m: usize) -> f64 {
        fn axis(k: usize, length: f64) -> f64 {
            if k % 2 == 0 {
                0.0
            } else {
                2.0 * length / (k as f64 * std::f64::consts::PI)
            }
        }
        match self {
            Grid::One(g) => axis(m + 1, g.length),
            Grid::Rect(g) => {
                axis(m % g.n_modes.0 + 1, g.lengths.0) * axis(m / g.n_modes.0 + 1, g.lengths.1)
            }
        }
    }

    /// Coordinates of the interior node with linear index j (0-based).
    /// The second coordinate is 0 on the interval.
    pub fn node_coords(&self, j: usize) -> (f64, f64) {
        match self {
            Grid::One(g) => (g.node(j), 0.0),
            Grid::Rect(g) => {
                let nx = g.n_interior.0;
                (g.axis_x().node(j % nx), g.axis_y().node(j / nx))
            }
        }
    }

    /// Center of the domain.
    pub fn center(&self) -> (f64, f64) {
        match self {
            Grid::One(g) => (g.length / 2.0, 0.0),
            Grid::Rect(g) => (g.lengths.0 / 2.0, g.lengths.1 / 2.0),
        }
    }

    fn check_same(&self, other: &Grid, what: &str) -> Result<()> {
        if self != other {
            return Err(CoreError::GridMismatch(format!(
                "{what} defined on a different grid"
            )));
        }
        Ok(())
    }
}

/// Scalar field sampled at the interior nodes; homogeneous Dirichlet data is
/// implied at the boundary unless an explicit boundary value accompanies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridField {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl GridField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(CoreError::GridMismatch(format!(
                "field has {} values, grid has {} interior nodes",
                values.len(),
                grid.node_count()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::DomainViolation(
                "field contains non-finite values".into(),
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn zero(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.node_count()],
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = (0..grid.node_count())
            .map(|j| {
                let (x, y) = grid.node_coords(j);
                f(x, y)
            })
            .collect();
        Self { grid, values }
    }

    pub fn same_grid(&self, other: &GridField) -> Result<()> {
        self.grid.check_same(&other.grid, "field")
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Index and coordinates of the minimizing node.
    pub fn argmin(&self) -> (usize, (f64, f64)) {
        let mut jm = 0;
        for (j, v) in self.values.iter().enumerate() {
            if *v < self.values[jm] {
                jm = j;
            }
        }
        (jm, self.grid.node_coords(jm))
    }

    /// Pointwise combination with another field on the same grid.
    pub fn zip_with(&self, other: &GridField, f: impl Fn(f64, f64) -> f64) -> Result<GridField> {
        self.same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(*a, *b))
            .collect();
        Ok(GridField {
            grid: self.grid,
            values,
        })
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> GridField {
        GridField {
            grid: self.grid,
            values: self.values.iter().map(|v| f(*v)).collect(),
        }
    }

    pub fn scale(&self, a: f64) -> GridField {
        self.map(|v| a * v)
    }

    pub fn add(&self, other: &GridField) -> Result<GridField> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridField) -> Result<GridField> {
        self.zip_with(other, |a, b| a - b)
    }
}

/// Coefficients of a field in the sine eigenbasis, linear mode indexing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCoeffs {
    pub grid: Grid,
    pub coeffs: Vec<f64>,
}

impl SpectralCoeffs {
    pub fn new(grid: Grid, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != grid.mode_count() {
            return Err(CoreError::GridMismatch(format!(
                "coefficient vector has {} entries, grid has {} modes",
                coeffs.len(),
                grid.mode_count()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(CoreError::DomainViolation(
                "coefficients contain non-finite values".into(),
            ));
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zero(grid: Grid) -> Self {
        Self {
            grid,
            coeffs: vec![0.0; grid.mode_count()],
        }
    }

    /// Single unit mode (0-based linear index).
    pub fn unit_mode(grid: Grid, m: usize) -> Self {
        let mut c = Self::zero(grid);
        c.coeffs[m] = 1.0;
        c
    }

    pub fn same_grid(&self, other: &SpectralCoeffs) -> Result<()> {
        self.grid.check_same(&other.grid, "coefficients")
    }

    pub fn scale(&self, a: f64) -> SpectralCoeffs {
        SpectralCoeffs {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| a * c).collect(),
        }
    }

    pub fn add_scaled(&self, other: &SpectralCoeffs, a: f64) -> Result<SpectralCoeffs> {
        self.same_grid(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + a * y)
            .collect();
        Ok(SpectralCoeffs {
            grid: self.grid,
            coeffs,
        })
    }

    pub fn add(&self, other: &SpectralCoeffs) -> Result<SpectralCoeffs> {
        self.add_scaled(other, 1.0)
    }

    pub fn sub(&self, other: &SpectralCoeffs) -> Result<SpectralCoeffs> {
        self.add_scaled(other, -1.0)
    }

    /// Integral of the represented field over the domain.
    pub fn integral(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c * self.grid.mode_integral(m))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn eigenvalues_match_closed_forms() {
        let g = Grid1D::new(PI, 16, 16).unwrap();
        assert!((g.eigenvalue(1).unwrap() - 1.0).abs() < 1e-15);
        let g = Grid1D::new(1.0, 16, 16).unwrap();
        assert!((g.eigenvalue(2).unwrap() - 4.0 * PI * PI).abs() < 1e-12);
        let r = Grid2DRect::new((PI, PI), (8, 8), (8, 8)).unwrap();
        assert!((r.eigenvalue(1, 1).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn eigenvalue_rejects_out_of_range() {
        let g = Grid1D::new(1.0, 8, 4).unwrap();
        assert!(g.eigenvalue(0).is_err());
        assert!(g.eigenvalue(5).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(Grid1D::new(-1.0, 8, 8).is_err());
        assert!(Grid1D::new(1.0, 8, 9).is_err());
        assert!(Grid1D::new(1.0, 0, 0).is_err());
    }

    #[test]
    fn mode_integral_odd_even() {
        let g = Grid::interval(1.0, 8, 8).unwrap();
        // integral of sin(pi x) over (0,1) is 2/pi; sin(2 pi x) integrates to 0
        assert!((g.mode_integral(0) - 2.0 / PI).abs() < 1e-15);
        assert_eq!(g.mode_integral(1), 0.0);
    }

    #[test]
    fn field_shape_checks() {
        let g = Grid::interval(1.0, 8, 8).unwrap();
        assert!(GridField::new(g, vec![0.0; 7]).is_err());
        assert!(GridField::new(g, vec![f64::NAN; 8]).is_err());
        let other = Grid::interval(2.0, 8, 8).unwrap();
        let a = GridField::zero(g);
        let b = GridField::zero(other);
        assert!(a.same_grid(&b).is_err());
    }

    #[test]
    fn rect_linear_indexing_is_x_fastest() {
        let g = Grid::rectangle((1.0, 2.0), (3, 2), (3, 2)).unwrap();
        let (x, y) = g.node_coords(1);
        assert!((x - 2.0 * 0.25).abs() < 1e-15);
        assert!((y - 2.0 / 3.0).abs() < 1e-15);
        let mu = g.mode_mu(3); // kx=1, ky=2
        assert!((mu - (PI * PI + PI * PI)).abs() < 1e-12);
    }
}
