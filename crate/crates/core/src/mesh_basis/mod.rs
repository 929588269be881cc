//! Representation layer: periodic grids, the Legendre dG basis, quadrature,
//! and the nodal phase-space distribution function.

mod basis;
mod distribution;
mod grid;
mod quadrature;

pub use basis::{evaluate_modal, DgBasis, MAX_DEGREE};
pub use distribution::DistributionFunction;
pub use grid::{PeriodicGrid1D, PhaseSpaceGrid};
pub use quadrature::{gauss_legendre_rule, legendre_values, MAX_RULE_POINTS};

/// Builds the degree-`k` basis.
pub fn build_basis(k: usize) -> crate::Result<DgBasis> {
    DgBasis::new(k)
}

/// Samples `f0` at the tensor Gauss points of `grid`.
pub fn sample_initial_condition(
    f0: impl Fn(f64, f64) -> f64,
    grid: std::sync::Arc<PhaseSpaceGrid>,
) -> crate::Result<DistributionFunction> {
    DistributionFunction::sample(grid, f0)
}
