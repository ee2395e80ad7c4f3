//! Sine-basis transforms between nodal fields and spectral coefficients.
//!
//! Plain O(nK) summation against cached sine tables; on the uniform grid the
//! discrete modes are orthogonal, so the round trip is exact (to rounding)
//! whenever the truncation uses the full rank K = n_interior.

use crate::error::Result;
use crate::grid::{Grid, Grid1D, GridField, SpectralCoeffs};

/// Cached sine tables for one grid.
#[derive(Debug, Clone)]
pub struct DstPlan {
    pub grid: Grid,
    // tables[axis][j * K + k] = sin((j+1)(k+1) pi / (n+1))
    tables: Vec<Vec<f64>>,
}

fn axis_table(g: &Grid1D) -> Vec<f64> {
    let n = g.n_interior;
    let k_max = g.n_modes;
    let mut t = vec![0.0; n * k_max];
    for j in 0..n {
        for k in 0..k_max {
            t[j * k_max + k] =
                ((j + 1) as f64 * (k + 1) as f64 * std::f64::consts::PI / (n as f64 + 1.0)).sin();
        }
    }
    t
}

impl DstPlan {
    pub fn new(grid: Grid) -> Self {
        let tables = match &grid {
            Grid::One(g) => vec![axis_table(g)],
            Grid::Rect(g) => vec![axis_table(&g.axis_x()), axis_table(&g.axis_y())],
        };
        Self { grid, tables }
    }

    /// Forward transform: coefficients of the discrete-orthogonal projection
    /// onto the first K sine modes.
    pub fn forward(&self, f: &GridField) -> Result<SpectralCoeffs> {
        if f.grid != self.grid {
            return Err(crate::error::CoreError::GridMismatch(
                "transform plan built for a different grid".into(),
            ));
        }
        match &self.grid {
            Grid::One(g) => {
                let n = g.n_interior;
                let k_max = g.n_modes;
                let scale = 2.0 / (n as f64 + 1.0);
                let t = &self.tables[0];
                let mut coeffs = vec![0.0; k_max];
                for j in 0..n {
                    let fj = f.values[j];
                    let row = &t[j * k_max..(j + 1) * k_max];
                    for (k, s) in row.iter().enumerate() {
                        coeffs[k] += fj * s;
                    }
                }
                for c in &mut coeffs {
                    *c *= scale;
                }
                SpectralCoeffs::new(self.grid, coeffs)
            }
            Grid::Rect(g) => {
                let (nx, ny) = g.n_interior;
                let (kx_max, ky_max) = g.n_modes;
                let tx = &self.tables[0];
                let ty = &self.tables[1];
                // contract along x: tmp[jy * kx_max + kx]
                let mut tmp = vec![0.0; ny * kx_max];
                for jy in 0..ny {
                    for jx in 0..nx {
                        let fv = f.values[jy * nx + jx];
                        let row = &tx[jx * kx_max..(jx + 1) * kx_max];
                        for (kx, s) in row.iter().enumerate() {
                            tmp[jy * kx_max + kx] += fv * s;
                        }
                    }
                }
                let scale = (2.0 / (nx as f64 + 1.0)) * (2.0 / (ny as f64 + 1.0));
                let mut coeffs = vec![0.0; kx_max * ky_max];
                for jy in 0..ny {
                    for ky in 0..ky_max {
                        let s = ty[jy * ky_max + ky];
                        for kx in 0..kx_max {
                            coeffs[ky * kx_max + kx] += tmp[jy * kx_max + kx] * s;
                        }
                    }
                }
                for c in &mut coeffs {
                    *c *= scale;
                }
                SpectralCoeffs::new(self.grid, coeffs)
            }
        }
    }

    /// Inverse transform: nodal samples of the sine series.
    pub fn inverse(&self, c: &SpectralCoeffs) -> Result<GridField> {
        if c.grid != self.grid {
            return Err(crate::error::CoreError::GridMismatch(
                "transform plan built for a different grid".into(),
            ));
        }
        match &self.grid {
            Grid::One(g) => {
                let n = g.n_interior;
                let k_max = g.n_modes;
                let t = &self.tables[0];
                let mut values = vec![0.0; n];
                for j in 0..n {
                    let row = &t[j * k_max..(j + 1) * k_max];
                    let mut acc = 0.0;
                    for (k, s) in row.iter().enumerate() {
                        acc += c.coeffs[k] * s;
                    }
                    values[j] = acc;
                }
                GridField::new(self.grid, values)
            }
            Grid::Rect(g) => {
                let (nx, ny) = g.n_interior;
                let (kx_max, ky_max) = g.n_modes;
                let tx = &self.tables[0];
                let ty = &self.tables[1];
                // contract along y first: tmp[jy * kx_max + kx]
                let mut tmp = vec![0.0; ny * kx_max];
                for jy in 0..ny {
                    for ky in 0..ky_max {
                        let s = ty[jy * ky_max + ky];
                        for kx in 0..kx_max {
                            tmp[jy * kx_max + kx] += c.coeffs[ky * kx_max + kx] * s;
                        }
                    }
                }
                let mut values = vec![0.0; nx * ny];
                for jy in 0..ny {
                    for jx in 0..nx {
                        let row = &tx[jx * kx_max..(jx + 1) * kx_max];
                        let mut acc = 0.0;
                        for (kx, s) in row.iter().enumerate() {
                            acc += tmp[jy * kx_max + kx] * s;
                        }
                        values[jy * nx + jx] = acc;
                    }
                }
                GridField::new(self.grid, values)
            }
        }
    }

    /// Evaluate the sine series at an arbitrary point of the domain.
    pub fn eval_at(&self, c: &SpectralCoeffs, x: f64, y: f64) -> f64 {
        match &self.grid {
            Grid::One(g) => c
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, cm)| {
                    cm * ((m + 1) as f64 * std::f64::consts::PI * x / g.length).sin()
                })
                .sum(),
            Grid::Rect(g) => {
                let (kx_max, _) = g.n_modes;
                c.coeffs
                    .iter()
                    .enumerate()
                    .map(|(m, cm)| {
                        let kx = (m % kx_max + 1) as f64;
                        let ky = (m / kx_max + 1) as f64;
                        cm * (kx * std::f64::consts::PI * x / g.lengths.0).sin()
                            * (ky * std::f64::consts::PI * y / g.lengths.1).sin()
                    })
                    .sum()
            }
        }
    }
}

/// One-off forward transform (builds a plan internally).
pub fn dst_forward(f: &GridField) -> Result<SpectralCoeffs> {
    DstPlan::new(f.grid).forward(f)
}

/// One-off inverse transform.
pub fn dst_inverse(c: &SpectralCoeffs) -> Result<GridField> {
    DstPlan::new(c.grid).inverse(c)
}
