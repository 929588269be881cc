use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::basis::evaluate_modal;
use super::grid::PhaseSpaceGrid;

/// Nodal values of f on the tensor Gauss points of a [`PhaseSpaceGrid`],
/// laid out as `[x_cell][v_cell][x_node][v_node]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionFunction {
    grid: Arc<PhaseSpaceGrid>,
    values: Vec<f64>,
}

impl DistributionFunction {
    pub fn zeros(grid: Arc<PhaseSpaceGrid>) -> Self {
        let values = vec![0.0; grid.len()];
        Self { grid, values }
    }

    pub fn from_values(grid: Arc<PhaseSpaceGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "expected {} nodal values, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Interpolates `f0` at every tensor Gauss point.
    pub fn sample(grid: Arc<PhaseSpaceGrid>, f0: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let p = grid.n_nodes();
        let mut values = Vec::with_capacity(grid.len());
        for ix in 0..grid.x().n_cells() {
            for iv in 0..grid.v().n_cells() {
                for a in 0..p {
                    let x = grid.x_node(ix, a);
                    for b in 0..p {
                        let v = grid.v_node(iv, b);
                        let value = f0(x, v);
                        if !value.is_finite() {
                            return Err(Error::NonFiniteSample { x, v, value });
                        }
                        values.push(value);
                    }
                }
            }
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &PhaseSpaceGrid {
        &self.grid
    }

    pub fn shared_grid(&self) -> &Arc<PhaseSpaceGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, ix: usize, iv: usize, a: usize, b: usize) -> f64 {
        self.values[self.grid.index(ix, iv, a, b)]
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn scale(&mut self, factor: f64) {
        self.values.iter_mut().for_each(|v| *v *= factor);
    }

    /// Modal coefficients `c[j][l]` (x-mode j, v-mode l) of one phase-space cell.
    pub fn cell_modal(&self, ix: usize, iv: usize) -> Matrix {
        let p = self.grid.n_nodes();
        let t = self.grid.basis().nodal_to_modal();
        let start = self.grid.index(ix, iv, 0, 0);
        let block = &self.values[start..start + p * p];
        // Transform along v (inner index), then along x.
        let mut tmp = Matrix::zeros(p, p);
        for a in 0..p {
            for l in 0..p {
                tmp[(a, l)] = (0..p).map(|b| t[(l, b)] * block[a * p + b]).sum();
            }
        }
        Matrix::from_fn(p, p, |j, l| (0..p).map(|a| t[(j, a)] * tmp[(a, l)]).sum())
    }

    /// Value of the piecewise tensor polynomial at `(x, v)`; x wraps periodically.
    pub fn evaluate(&self, x: f64, v: f64) -> Result<f64> {
        let g = &self.grid;
        if !(v >= g.v_min() && v <= g.v_max()) {
            return Err(Error::OutOfDomain {
                x,
                v,
                v_min: g.v_min(),
                v_max: g.v_max(),
            });
        }
        let (ix, sx) = g.x().locate(x);
        let t = ((v - g.v_min()) / g.v().cell_width()).floor();
        let iv = (t.max(0.0) as usize).min(g.v().n_cells() - 1);
        let sv = (2.0 * ((v - g.v().cell_left(iv)) / g.v().cell_width()) - 1.0).clamp(-1.0, 1.0);
        let c = self.cell_modal(ix, iv);
        let p = g.n_nodes();
        let along_v: Vec<f64> = (0..p).map(|j| evaluate_modal(c.row(j), sv)).collect();
        Ok(evaluate_modal(&along_v, sx))
    }

    /// Cell averages, indexed `[x_cell * nv + v_cell]`.
    pub fn cell_averages(&self) -> Vec<f64> {
        let g = &self.grid;
        let p = g.n_nodes();
        let w = g.basis().weights();
        self.values
            .chunks_exact(p * p)
            .map(|block| {
                let mut s = 0.0;
                for a in 0..p {
                    for b in 0..p {
                        s += w[a] * w[b] * block[a * p + b];
                    }
                }
                0.25 * s
            })
            .collect()
    }

    /// Smallest nodal value.
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}
