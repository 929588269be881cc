use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::quadrature::{gauss_legendre_rule, legendre_values};

/// Largest supported polynomial degree.
pub const MAX_DEGREE: usize = 9;

/// Degree-`k` Legendre basis on the reference interval [-1, 1] with its
/// Gauss-Legendre collocation nodes.
///
/// Nodal values are the stored representation; modal coefficients are
/// relative to Legendre polynomials normalized by `P_j(1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DgBasis {
    degree: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    nodal_to_modal: Matrix,
    modal_to_nodal: Matrix,
}

impl DgBasis {
    pub fn new(degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::invalid(format!(
                "basis degree {degree} outside 0..={MAX_DEGREE}"
            )));
        }
        let n = degree + 1;
        let (nodes, weights) = gauss_legendre_rule(n)?;
        let vander: Vec<Vec<f64>> = nodes.iter().map(|&x| legendre_values(x, degree)).collect();
        let modal_to_nodal = Matrix::from_fn(n, n, |i, j| vander[i][j]);
        // Discrete L2 projection; exact because P_i P_j has degree <= 2k.
        let nodal_to_modal = Matrix::from_fn(n, n, |j, i| {
            (2.0 * j as f64 + 1.0) / 2.0 * weights[i] * vander[i][j]
        });
        Ok(Self {
            degree,
            nodes,
            weights,
            nodal_to_modal,
            modal_to_nodal,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of nodes (and modes) per cell, `k + 1`.
    pub fn n_nodes(&self) -> usize {
        self.degree + 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn nodal_to_modal(&self) -> &Matrix {
        &self.nodal_to_modal
    }

    pub fn modal_to_nodal(&self) -> &Matrix {
        &self.modal_to_nodal
    }

    pub fn to_modal(&self, nodal: &[f64]) -> Vec<f64> {
        self.nodal_to_modal.mul_vec(nodal)
    }

    pub fn to_nodal(&self, modal: &[f64]) -> Vec<f64> {
        self.modal_to_nodal.mul_vec(modal)
    }

    /// Mean over the reference cell of the polynomial with the given nodal values.
    pub fn cell_average(&self, nodal: &[f64]) -> f64 {
        0.5 * self
            .weights
            .iter()
            .zip(nodal)
            .map(|(w, u)| w * u)
            .sum::<f64>()
    }

    /// Matrix mapping nodal values to values at arbitrary reference points.
    pub fn interpolation_matrix(&self, points: &[f64]) -> Matrix {
        let vander: Vec<Vec<f64>> = points
            .iter()
            .map(|&s| legendre_values(s, self.degree))
            .collect();
        let v = Matrix::from_fn(points.len(), self.n_nodes(), |i, j| vander[i][j]);
        v.matmul(&self.nodal_to_modal)
    }
}

/// Value at reference coordinate `s` of a Legendre expansion.
pub fn evaluate_modal(coeffs: &[f64], s: f64) -> f64 {
    if coeffs.is_empty() {
        return 0.0;
    }
    let p = legendre_values(s, coeffs.len() - 1);
    coeffs.iter().zip(&p).map(|(c, p)| c * p).sum()
}
