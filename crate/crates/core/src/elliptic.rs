//! Variable-coefficient pressure solve: div(w^3 grad u) = v with u = 0 on the
//! boundary, plus the directional derivatives of the solution map in v and w.
//!
//! Discretization is flux-conservative second-order finite differences with
//! arithmetic half-cell averaging of w^3; the interval case is a tridiagonal
//! direct solve, the rectangle a 5-point stencil solved by conjugate
//! gradients to 1e-10 relative residual. The stencil is an M-matrix for
//! positive w, so the discrete maximum principle holds. Spectral fields are
//! brought to nodal form before assembly; output norms go back through the
//! sine basis.

use crate::error::{CoreError, Result};
use crate::grid::{Grid, GridField};
use crate::norms;
use crate::transform::dst_forward;

/// Relative-residual target for the iterative rectangle solve.
const CG_TOL: f64 = 1e-10;

/// Problem data: full (unlifted) gap coefficient with its constant boundary
/// value, and the right-hand side.
#[derive(Debug, Clone)]
pub struct EllipticProblem {
    pub w: GridField,
    pub w_boundary: f64,
    pub v: GridField,
}

impl EllipticProblem {
    pub fn new(w: GridField, w_boundary: f64, v: GridField) -> Result<Self> {
        w.same_grid(&v)?;
        let min = w.min().min(w_boundary);
        if !(min > 0.0) {
            let (_, loc) = w.argmin();
            return Err(CoreError::Quench {
                time: None,
                min_gap: min,
                location: Some(loc),
            });
        }
        Ok(Self { w, w_boundary, v })
    }
}

/// Solution with its measured strength relative to the dual norm of the data.
#[derive(Debug, Clone)]
pub struct EllipticSolution {
    pub u_tilde: GridField,
    pub h1_norm: f64,
    /// ||u||_{H1} / ||v||_{H^-1}; compared against the ledger constant by the
    /// estimate suite.
    pub ratio_vs_bound: f64,
}

/// Tridiagonal solve (Thomas algorithm) for diag/off-diagonal bands.
fn solve_tridiag(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut denom = diag[0];
    if denom == 0.0 {
        return Err(CoreError::Internal("singular tridiagonal matrix".into()));
    }
    c[0] = upper[0] / denom;
    d[0] = rhs[0] / denom;
    for i in 1..n {
        denom = diag[i] - lower[i] * c[i - 1];
        if denom == 0.0 {
            return Err(CoreError::Internal("singular tridiagonal matrix".into()));
        }
        if i < n - 1 {
            c[i] = upper[i] / denom;
        }
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    Ok(x)
}

/// Half-cell coefficients a_{j+1/2} = (w_j^3 + w_{j+1}^3)/2 on the interval,
/// including both boundary cells (j = 0 and j = n).
fn half_cell_coeffs_1d(w: &[f64], w_b: f64, cube: bool) -> Vec<f64> {
    let f = |x: f64| if cube { x * x * x } else { x };
    let n = w.len();
    let mut a = vec![0.0; n + 1];
    for j in 0..=n {
        let left = if j == 0 { f(w_b) } else { f(w[j - 1]) };
        let right = if j == n { f(w_b) } else { f(w[j]) };
        a[j] = 0.5 * (left + right);
    }
    a
}

/// Apply the 1-D flux-form operator u -> (a u')' at the interior nodes.
fn apply_flux_1d(a: &[f64], u: &[f64], h: f64) -> Vec<f64> {
    let n = u.len();
    let h2 = h * h;
    (0..n)
        .map(|j| {
            let left = if j == 0 { 0.0 } else { u[j - 1] };
            let right = if j + 1 == n { 0.0 } else { u[j + 1] };
            (a[j + 1] * (right - u[j]) - a[j] * (u[j] - left)) / h2
        })
        .collect()
}

struct Stencil2D {
    nx: usize,
    ny: usize,
    hx: f64,
    hy: f64,
    // edge coefficients: ax[jy][jx in 0..=nx], ay[jy in 0..=ny][jx]
    ax: Vec<f64>,
    ay: Vec<f64>,
}

impl Stencil2D {
    /// Edge half-cell coefficients of the given nodal coefficient field
    /// (boundary value `cb` applies outside the interior block).
    fn new(grid: &Grid, coeff: &[f64], cb: f64) -> Self {
        let g = match grid {
            Grid::Rect(g) => g,
            Grid::One(_) => unreachable!("2-D stencil on 1-D grid"),
        };
        let (nx, ny) = g.n_interior;
        let hx = g.axis_x().spacing();
        let hy = g.axis_y().spacing();
        let at = |jx: isize, jy: isize| -> f64 {
            if jx < 0 || jy < 0 || jx >= nx as isize || jy >= ny as isize {
                cb
            } else {
                coeff[jy as usize * nx + jx as usize]
            }
        };
        let mut ax = vec![0.0; (nx + 1) * ny];
        for jy in 0..ny {
            for jx in 0..=nx {
                ax[jy * (nx + 1) + jx] =
                    0.5 * (at(jx as isize - 1, jy as isize) + at(jx as isize, jy as isize));
            }
        }
        let mut ay = vec![0.0; nx * (ny + 1)];
        for jy in 0..=ny {
            for jx in 0..nx {
                ay[jy * nx + jx] =
                    0.5 * (at(jx as isize, jy as isize - 1) + at(jx as isize, jy as isize));
            }
        }
        Self { nx, ny, hx, hy, ax, ay }
    }

    /// y = div(a grad u) at interior nodes (Dirichlet zero outside).
    fn apply(&self, u: &[f64]) -> Vec<f64> {
        let (nx, ny) = (self.nx, self.ny);
        let (hx2, hy2) = (self.hx * self.hx, self.hy * self.hy);
        let mut out = vec![0.0; nx * ny];
        for jy in 0..ny {
            for jx in 0..nx {
                let u0 = u[jy * nx + jx];
                let ul = if jx == 0 { 0.0 } else { u[jy * nx + jx - 1] };
                let ur = if jx + 1 == nx { 0.0 } else { u[jy * nx + jx + 1] };
                let ud = if jy == 0 { 0.0 } else { u[(jy - 1) * nx + jx] };
                let uu = if jy + 1 == ny { 0.0 } else { u[(jy + 1) * nx + jx] };
                let axl = self.ax[jy * (nx + 1) + jx];
                let axr = self.ax[jy * (nx + 1) + jx + 1];
                let ayd = self.ay[jy * nx + jx];
                let ayu = self.ay[(jy + 1) * nx + jx];
                out[jy * nx + jx] = (axr * (ur - u0) - axl * (u0 - ul)) / hx2
                    + (ayu * (uu - u0) - ayd * (u0 - ud)) / hy2;
            }
        }
        out
    }
}

/// Conjugate gradients on the negated (positive-definite) operator.
fn solve_cg(stencil: &Stencil2D, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = rhs.len();
    // solve  -div(a grad u) = -rhs
    let b: Vec<f64> = rhs.iter().map(|v| -v).collect();
    let b_norm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
    if b_norm == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let mut x = vec![0.0; n];
    let mut r = b.clone();
    let mut p = r.clone();
    let mut rs = r.iter().map(|v| v * v).sum::<f64>();
    for _ in 0..(20 * n + 100) {
        let ap: Vec<f64> = stencil.apply(&p).iter().map(|v| -v).collect();
        let p_ap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
        if p_ap <= 0.0 {
            return Err(CoreError::Internal(
                "lost positive-definiteness in conjugate gradients".into(),
            ));
        }
        let alpha = rs / p_ap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rs_new = r.iter().map(|v| v * v).sum::<f64>();
        if rs_new.sqrt() <= CG_TOL * b_norm {
            return Ok(x);
        }
        let beta = rs_new / rs;
        rs = rs_new;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    Err(CoreError::Internal(
        "conjugate gradients failed to reach tolerance".into(),
    ))
}

/// Solve the flux-form system for a given coefficient field (already cubed or
/// not, per `cube`) and right-hand side.
fn solve_with_coeff(
    grid: &Grid,
    coeff: &[f64],
    coeff_boundary: f64,
    rhs: &[f64],
    cube: bool,
) -> Result<Vec<f64>> {
    match grid {
        Grid::One(g) => {
            let n = g.n_interior;
            let h2 = g.spacing() * g.spacing();
            let a = half_cell_coeffs_1d(coeff, coeff_boundary, cube);
            let mut lower = vec![0.0; n];
            let mut diag = vec![0.0; n];
            let mut upper = vec![0.0; n];
            for j in 0..n {
                lower[j] = a[j] / h2;
                upper[j] = a[j + 1] / h2;
                diag[j] = -(a[j] + a[j + 1]) / h2;
            }
            solve_tridiag(&lower, &diag, &upper, rhs)
        }
        Grid::Rect(_) => {
            let cubed: Vec<f64>;
            let (c, cb) = if cube {
                cubed = coeff.iter().map(|w| w * w * w).collect();
                (&cubed[..], coeff_boundary.powi(3))
            } else {
                (coeff, coeff_boundary)
            };
            let stencil = Stencil2D::new(grid, c, cb);
            solve_cg(&stencil, rhs)
        }
    }
}

/// Solve div(w^3 grad u) = v with zero boundary data; returns the nodal
/// solution together with its measured H1-vs-dual-norm ratio.
pub fn solve_s_o(p: &EllipticProblem) -> Result<EllipticSolution> {
    let grid = p.w.grid;
    let u = solve_with_coeff(&grid, &p.w.values, p.w_boundary, &p.v.values, true)?;
    let u_tilde = GridField::new(grid, u)?;
    let h1 = norms::norm_h1(&dst_forward(&u_tilde)?);
    let dual = norms::norm_hneg1(&dst_forward(&p.v)?);
    let ratio = if dual > 0.0 { h1 / dual } else { 0.0 };
    Ok(EllipticSolution {
        u_tilde,
        h1_norm: h1,
        ratio_vs_bound: ratio,
    })
}

/// Derivative of the solution map in the data slot: the map is linear in v,
/// so this is one solve with right-hand side phi.
pub fn dv_s_o(p: &EllipticProblem, phi: &GridField) -> Result<GridField> {
    phi.same_grid(&p.w)?;
    let grid = p.w.grid;
    let u = solve_with_coeff(&grid, &p.w.values, p.w_boundary, &phi.values, true)?;
    GridField::new(grid, u)
}

/// Derivative of the solution map in the coefficient slot: solves
/// div(w^3 grad eta) = -div(3 w^2 psi grad u) with u the base solution. The
/// right-hand side is assembled in the same flux form with edge coefficients
/// that are the exact derivative of the cubed half-cell averages, so central
/// difference quotients of the discrete solve converge to this at O(lambda^2).
pub fn dw_s_o(p: &EllipticProblem, psi: &GridField) -> Result<GridField> {
    psi.same_grid(&p.w)?;
    let grid = p.w.grid;
    let base = solve_s_o(p)?;
    let u = &base.u_tilde.values;
    // edge coefficient field 3 w^2 psi (psi is pinned: zero at the boundary)
    let deriv_coeff: Vec<f64> = p
        .w
        .values
        .iter()
        .zip(&psi.values)
        .map(|(w, s)| 3.0 * w * w * s)
        .collect();
    let rhs: Vec<f64> = match &grid {
        Grid::One(g) => {
            let b = half_cell_coeffs_1d(&deriv_coeff, 0.0, false);
            apply_flux_1d(&b, u, g.spacing())
                .iter()
                .map(|v| -v)
                .collect()
        }
        Grid::Rect(_) => {
            let stencil = Stencil2D::new(&grid, &deriv_coeff, 0.0);
            stencil.apply(u).iter().map(|v| -v).collect()
        }
    };
    let eta = solve_with_coeff(&grid, &p.w.values, p.w_boundary, &rhs, true)?;
    GridField::new(grid, eta)
}

/// Empirical maximum of ||u||_{H1}/||v||_{H^-1} over a seeded ensemble of
/// coefficient fields bounded below by kappa/2. A running maximum, so it is
/// monotone in the trial count and a lower bound for the true constant.
pub fn measure_c_o(grid: &Grid, kappa: f64, trials: usize, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(CoreError::Config("empty measurement ensemble".into()));
    }
    let plan = crate::transform::DstPlan::new(*grid);
    let mut sampler = crate::ensemble::FieldSampler::new(seed);
    let mut best: f64 = 0.0;
    for _ in 0..trials {
        // gap = kappa + pinned perturbation kept above kappa/2
        let delta = sampler.coeffs(*grid);
        let nodal = plan.inverse(&delta)?;
        let amp = nodal.max_abs();
        let scale = if amp > 0.0 {
            sampler.uniform(0.0, 0.49) * kappa / amp
        } else {
            0.0
        };
        let w = nodal.map(|d| kappa + scale * d);
        let v = plan.inverse(&sampler.coeffs(*grid))?;
        let sol = solve_s_o(&EllipticProblem::new(w, kappa, v)?)?;
        best = best.max(sol.ratio_vs_bound);
    }
    Ok(best)
}

/// Empirical maximum of the coefficient-Lipschitz ratio
/// ||S(v,w1)-S(v,w2)||_{H1} / (||v||_{H^-1} ||w1-w2||_{H2}) over pairs drawn
/// in the ball of radius r around w0.
pub fn measure_c_o_star(
    w0: &GridField,
    w_boundary: f64,
    r: f64,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(CoreError::Config("empty measurement ensemble".into()));
    }
    let grid = w0.grid;
    let plan = crate::transform::DstPlan::new(grid);
    let w0_coeffs = plan.forward(w0)?;
    let mut sampler = crate::ensemble::FieldSampler::new(seed);
    let mut best: f64 = 0.0;
    for _ in 0..trials {
        let w1c = sampler.in_ball(&w0_coeffs, r);
        let w2c = sampler.in_ball(&w0_coeffs, r);
        let diff_h2 = norms::norm_h2(&w1c.sub(&w2c)?);
        if diff_h2 == 0.0 {
            continue;
        }
        let v = plan.inverse(&sampler.coeffs(grid))?;
        let dual = norms::norm_hneg1(&dst_forward(&v)?);
        let w1 = plan.inverse(&w1c)?;
        let w2 = plan.inverse(&w2c)?;
        let u1 = solve_s_o(&EllipticProblem::new(w1, w_boundary, v.clone())?)?;
        let u2 = solve_s_o(&EllipticProblem::new(w2, w_boundary, v)?)?;
        let num = norms::norm_h1(&dst_forward(&u1.u_tilde.sub(&u2.u_tilde)?)?);
        best = best.max(num / (dual * diff_h2));
    }
    Ok(best)
}
