//! Charge density, the periodic Poisson solve, and the electric field.
//!
//! The field obeys `dE/dx = rho - 1` with zero domain mean. Because rho is
//! piecewise polynomial of degree k, E is built as its exact piecewise
//! antiderivative (degree k+1 per cell), continuous across interfaces.

use crate::error::{Error, Result};
use crate::mesh_basis::{
    evaluate_modal, gauss_legendre_rule, legendre_values, DgBasis, DistributionFunction,
    PeriodicGrid1D, PhaseSpaceGrid,
};

/// Largest tolerated `|integral (rho - 1) dx|` in [`solve_poisson`].
pub const COMPATIBILITY_TOLERANCE: f64 = 1e-9;

/// Nodal values of `rho(x) = integral f dv`, laid out `[x_cell][x_node]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityLine {
    pub values: Vec<f64>,
}

impl DensityLine {
    /// Quadrature integral of `rho - 1` over the spatial domain.
    pub fn excess_charge(&self, grid: &PeriodicGrid1D, basis: &DgBasis) -> f64 {
        let h = grid.cell_width();
        self.values
            .chunks_exact(basis.n_nodes())
            .map(|cell| h * (basis.cell_average(cell) - 1.0))
            .sum()
    }
}

/// Electric field and potential as piecewise Legendre expansions.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    n_cells: usize,
    /// Modal coefficients of E, `k + 2` per cell.
    e_modal: Vec<f64>,
    /// Modal coefficients of phi, `k + 3` per cell.
    phi_modal: Vec<f64>,
    /// E at the Gauss nodes, `k + 1` per cell.
    pub e_nodal: Vec<f64>,
    /// Domain mean of E after the zero-mean correction.
    pub e_mean: f64,
}

impl FieldState {
    /// Identically zero field.
    pub fn zero(n_cells: usize, basis: &DgBasis) -> Self {
        let p = basis.n_nodes();
        Self {
            n_cells,
            e_modal: vec![0.0; n_cells * (p + 1)],
            phi_modal: vec![0.0; n_cells * (p + 2)],
            e_nodal: vec![0.0; n_cells * p],
            e_mean: 0.0,
        }
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn e_modal(&self) -> &[f64] {
        &self.e_modal
    }

    pub fn phi_modal(&self) -> &[f64] {
        &self.phi_modal
    }

    fn modes(&self) -> usize {
        self.e_modal.len() / self.n_cells
    }

    /// E at an arbitrary point (periodic in x).
    pub fn e_at(&self, grid: &PeriodicGrid1D, x: f64) -> f64 {
        let (cell, s) = grid.locate(x);
        let m = self.modes();
        evaluate_modal(&self.e_modal[cell * m..(cell + 1) * m], s)
    }

    /// phi at an arbitrary point (periodic in x).
    pub fn phi_at(&self, grid: &PeriodicGrid1D, x: f64) -> f64 {
        let (cell, s) = grid.locate(x);
        let m = self.modes() + 1;
        evaluate_modal(&self.phi_modal[cell * m..(cell + 1) * m], s)
    }

    /// Values of E on each cell at the points of the `n`-point Gauss rule.
    fn values_at_rule(&self, n: usize) -> (Vec<f64>, Vec<f64>) {
        let (nodes, weights) = gauss_legendre_rule(n).expect("rule size within range");
        let m = self.modes();
        let table: Vec<Vec<f64>> = nodes.iter().map(|&s| legendre_values(s, m - 1)).collect();
        let mut out = Vec::with_capacity(self.n_cells * n);
        for cell in self.e_modal.chunks_exact(m) {
            for p in &table {
                out.push(cell.iter().zip(p).map(|(c, p)| c * p).sum());
            }
        }
        (out, weights)
    }
}

/// Velocity integral of f at every spatial Gauss node.
pub fn compute_density(f: &DistributionFunction) -> DensityLine {
    let g = f.grid();
    let p = g.n_nodes();
    let w = g.basis().weights();
    let half_hv = 0.5 * g.v().cell_width();
    let nv = g.v().n_cells();
    let mut values = vec![0.0; g.x().n_cells() * p];
    for (ix, block) in f.values().chunks_exact(g.x_cell_block()).enumerate() {
        for a in 0..p {
            let mut s = 0.0;
            for iv in 0..nv {
                let base = (iv * p + a) * p;
                for b in 0..p {
                    s += w[b] * block[base + b];
                }
            }
            values[ix * p + a] = half_hv * s;
        }
    }
    DensityLine { values }
}

/// Antiderivative `integral_{-1}^{s}` of a Legendre series, one degree higher.
fn legendre_antiderivative(coeffs: &[f64]) -> Vec<f64> {
    let mut q = vec![0.0; coeffs.len() + 1];
    for (j, &r) in coeffs.iter().enumerate() {
        if j == 0 {
            q[0] += r;
            q[1] += r;
        } else {
            let s = r / (2.0 * j as f64 + 1.0);
            q[j + 1] += s;
            q[j - 1] -= s;
        }
    }
    q
}

/// Continuous periodic piecewise antiderivative with zero domain mean.
///
/// `source` holds `m` modal coefficients per cell whose cell means sum to 0.
/// Returns `m + 1` coefficients per cell and the mean removed.
fn periodic_antiderivative(source: &[f64], m: usize, h: f64) -> (Vec<f64>, f64) {
    let n = source.len() / m;
    let mut out = Vec::with_capacity(n * (m + 1));
    let mut left = 0.0;
    for cell in source.chunks_exact(m) {
        let q = legendre_antiderivative(cell);
        let start = out.len();
        out.extend(q.iter().map(|c| 0.5 * h * c));
        out[start] += left;
        // Value at s = 1 is the sum of the coefficients.
        left += h * cell[0];
    }
    let mean = out.iter().step_by(m + 1).sum::<f64>() / n as f64;
    for c in out.iter_mut().step_by(m + 1) {
        *c -= mean;
    }
    (out, mean)
}

/// Solves `dE/dx = rho - 1` on the periodic x grid.
///
/// Errors if `|integral (rho - 1) dx| > COMPATIBILITY_TOLERANCE`. A residual
/// below the tolerance is removed from the source before integrating so that
/// E stays exactly periodic.
pub fn solve_poisson(
    rho: &DensityLine,
    grid: &PeriodicGrid1D,
    basis: &DgBasis,
) -> Result<FieldState> {
    let p = basis.n_nodes();
    let n = grid.n_cells();
    if rho.values.len() != n * p {
        return Err(Error::invalid(format!(
            "density has {} values, grid expects {}",
            rho.values.len(),
            n * p
        )));
    }
    let h = grid.cell_width();
    let excess = rho.excess_charge(grid, basis);
    if excess.is_nan() || excess.abs() > COMPATIBILITY_TOLERANCE {
        return Err(Error::IncompatibleDensity {
            integral: excess,
            tolerance: COMPATIBILITY_TOLERANCE,
        });
    }
    let residual_mean = excess / grid.length();
    let mut source = Vec::with_capacity(n * p);
    for cell in rho.values.chunks_exact(p) {
        let mut modal = basis.to_modal(cell);
        modal[0] -= 1.0 + residual_mean;
        source.extend(modal);
    }
    let (e_modal, _) = periodic_antiderivative(&source, p, h);
    let e_mean = e_modal.iter().step_by(p + 1).sum::<f64>() / n as f64;
    let (phi_modal, _) = periodic_antiderivative(&e_modal, p + 1, h);

    let table: Vec<Vec<f64>> = basis
        .nodes()
        .iter()
        .map(|&s| legendre_values(s, p))
        .collect();
    let mut e_nodal = Vec::with_capacity(n * p);
    for cell in e_modal.chunks_exact(p + 1) {
        for row in &table {
            e_nodal.push(cell.iter().zip(row).map(|(c, v)| c * v).sum());
        }
    }
    Ok(FieldState {
        n_cells: n,
        e_modal,
        phi_modal,
        e_nodal,
        e_mean,
    })
}

/// `1/2 integral E^2 dx`, exact for the degree-(2k+2) integrand.
pub fn electric_energy(field: &FieldState, grid: &PeriodicGrid1D, basis: &DgBasis) -> f64 {
    let n = basis.n_nodes() + 1;
    let (values, weights) = field.values_at_rule(n);
    let half_h = 0.5 * grid.cell_width();
    let mut total = 0.0;
    for cell in values.chunks_exact(n) {
        let s: f64 = cell.iter().zip(&weights).map(|(e, w)| w * e * e).sum();
        total += half_h * s;
    }
    0.5 * total
}

/// Convenience: density and field of `f` in one call.
pub fn field_from_distribution(f: &DistributionFunction) -> Result<FieldState> {
    let g: &PhaseSpaceGrid = f.grid();
    solve_poisson(&compute_density(f), g.x(), g.basis())
}
