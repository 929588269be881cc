use crate::error::{Error, Result};

use super::basis::DgBasis;

/// Uniform 1D grid whose cell indices wrap modulo `n_cells`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicGrid1D {
    n_cells: usize,
    origin: f64,
    length: f64,
}

impl PeriodicGrid1D {
    pub fn new(n_cells: usize, origin: f64, length: f64) -> Result<Self> {
        if n_cells < 2 {
            return Err(Error::invalid(format!(
                "grid needs at least 2 cells, got {n_cells}"
            )));
        }
        if !(length.is_finite() && length > 0.0) || !origin.is_finite() {
            return Err(Error::invalid(format!(
                "grid extent must be finite and positive (origin {origin}, length {length})"
            )));
        }
        Ok(Self {
            n_cells,
            origin,
            length,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn end(&self) -> f64 {
        self.origin + self.length
    }

    pub fn cell_width(&self) -> f64 {
        self.length / self.n_cells as f64
    }

    pub fn cell_left(&self, cell: usize) -> f64 {
        self.origin + cell as f64 * self.cell_width()
    }

    pub fn cell_center(&self, cell: usize) -> f64 {
        self.origin + (cell as f64 + 0.5) * self.cell_width()
    }

    /// Physical coordinate of reference point `s` in [-1, 1] of `cell`.
    pub fn map_point(&self, cell: usize, s: f64) -> f64 {
        self.cell_center(cell) + 0.5 * self.cell_width() * s
    }

    /// Cell index and reference coordinate of `x` after periodic wrapping.
    pub fn locate(&self, x: f64) -> (usize, f64) {
        let h = self.cell_width();
        let t = (x - self.origin).rem_euclid(self.length) / h;
        let cell = (t.floor() as usize).min(self.n_cells - 1);
        let s = 2.0 * (t - cell as f64) - 1.0;
        (cell, s.clamp(-1.0, 1.0))
    }

    /// Wrapped cell index `cell + offset`.
    pub fn wrap(&self, cell: isize) -> usize {
        cell.rem_euclid(self.n_cells as isize) as usize
    }
}

/// Tensor-product dG discretization of the (x, v) phase space.
///
/// The velocity grid spans `[v_min, v_max]`; translations in v wrap
/// periodically so that advection conserves mass exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceGrid {
    x: PeriodicGrid1D,
    v: PeriodicGrid1D,
    basis: DgBasis,
}

impl PhaseSpaceGrid {
    pub fn new(x: PeriodicGrid1D, v: PeriodicGrid1D, basis: DgBasis) -> Result<Self> {
        let (v_min, v_max) = (v.origin(), v.end());
        if !(v_min < 0.0 && 0.0 < v_max) {
            return Err(Error::invalid(format!(
                "velocity domain [{v_min}, {v_max}] must contain 0 in its interior"
            )));
        }
        Ok(Self { x, v, basis })
    }

    /// Grid over `[0, length] x [-v_max, v_max]` with the given cell counts and degree.
    pub fn uniform(
        nx_cells: usize,
        length: f64,
        nv_cells: usize,
        v_max: f64,
        degree: usize,
    ) -> Result<Self> {
        let x = PeriodicGrid1D::new(nx_cells, 0.0, length)?;
        let v = PeriodicGrid1D::new(nv_cells, -v_max, 2.0 * v_max)?;
        Self::new(x, v, DgBasis::new(degree)?)
    }

    pub fn x(&self) -> &PeriodicGrid1D {
        &self.x
    }

    pub fn v(&self) -> &PeriodicGrid1D {
        &self.v
    }

    pub fn basis(&self) -> &DgBasis {
        &self.basis
    }

    pub fn n_nodes(&self) -> usize {
        self.basis.n_nodes()
    }

    pub fn v_min(&self) -> f64 {
        self.v.origin()
    }

    pub fn v_max(&self) -> f64 {
        self.v.end()
    }

    /// Degrees of freedom per dimension, `(nx * (k+1), nv * (k+1))`.
    pub fn dof(&self) -> (usize, usize) {
        let p = self.n_nodes();
        (self.x.n_cells() * p, self.v.n_cells() * p)
    }

    /// Physical x coordinate of node `a` in cell `ix`.
    pub fn x_node(&self, ix: usize, a: usize) -> f64 {
        self.x.map_point(ix, self.basis.nodes()[a])
    }

    /// Physical v coordinate of node `b` in cell `iv`.
    pub fn v_node(&self, iv: usize, b: usize) -> f64 {
        self.v.map_point(iv, self.basis.nodes()[b])
    }

    /// Total number of stored nodal values.
    pub fn len(&self) -> usize {
        let p = self.n_nodes();
        self.x.n_cells() * self.v.n_cells() * p * p
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of `[ix][iv][a][b]`.
    #[inline]
    pub fn index(&self, ix: usize, iv: usize, a: usize, b: usize) -> usize {
        let p = self.n_nodes();
        ((ix * self.v.n_cells() + iv) * p + a) * p + b
    }

    /// Length of the contiguous block holding all values of one x cell.
    pub fn x_cell_block(&self) -> usize {
        let p = self.n_nodes();
        self.v.n_cells() * p * p
    }
}
