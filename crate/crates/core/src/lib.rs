//! Simulation core for a squeeze-film MEMS plate model: an incompressible
//! lubrication equation for the gas pressure coupled to a dispersive plate
//! equation for the gap width, on an interval or a rectangle with pinned
//! boundary conditions.
//!
//! The displacement operator is diagonal in the Dirichlet sine basis, so the
//! linear flow is evaluated exactly per mode; the variable-coefficient
//! pressure solve uses flux-conservative finite differences; the coupled
//! dynamics are integrated either by an exponential midpoint march or by a
//! fixed-point sweep over a whole time window. Every quantitative estimate
//! the construction relies on is re-checked numerically by the
//! [`verification`] suite against independently computed references.

pub mod elliptic;
pub mod ensemble;
pub mod error;
pub mod evolution;
pub mod grid;
pub mod nonlinearity;
pub mod norms;
pub mod semigroup;
pub mod transform;
pub mod verification;

pub use error::{CoreError, Result};
pub use grid::{Grid, Grid1D, Grid2DRect, GridField, SpectralCoeffs};
pub use semigroup::{PinnedOperator, StateX};
