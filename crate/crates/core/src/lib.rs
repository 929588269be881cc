//! Structure-preserving solver for the 1x+1v Vlasov-Poisson system.
//!
//! The equation is split (Strang) into one-dimensional translations in x and
//! v, each solved either by the semi-Lagrangian discontinuous Galerkin kernel
//! or by periodic cubic-spline interpolation. The electric field comes from an
//! exact piecewise-polynomial Poisson solve, and [`diagnostics`] tracks mass,
//! momentum, energy, L1/L2 norms, entropy, and positivity.

pub mod advection;
pub mod app;
pub mod diagnostics;
mod error;
pub mod fields;
pub mod integrator;
pub mod matrix;
pub mod mesh_basis;

pub use error::{Error, Result};
