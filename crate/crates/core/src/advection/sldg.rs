//! Semi-Lagrangian dG translation: exact shift of the piecewise polynomial
//! followed by L2 projection, which couples each cell to two upstream cells.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mesh_basis::{gauss_legendre_rule, legendre_values, DgBasis};

/// Update operator for a translation `u(xi) -> u(xi - shift)`.
///
/// With `shift / h = m + alpha`, `m = floor(shift / h)` and `alpha` in [0, 1),
/// the new modal coefficients of cell `i` are
/// `left * c[i - m - 1] + right * c[i - m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationStencil {
    cell_offset: isize,
    frac: f64,
    left_matrix: Matrix,
    right_matrix: Matrix,
    left_nodal: Matrix,
    right_nodal: Matrix,
}

impl TranslationStencil {
    pub fn new(shift: f64, cell_width: f64, basis: &DgBasis) -> Result<Self> {
        if !shift.is_finite() {
            return Err(Error::invalid(format!(
                "translation shift {shift} is not finite"
            )));
        }
        if !(cell_width.is_finite() && cell_width > 0.0) {
            return Err(Error::invalid(format!(
                "cell width {cell_width} must be positive"
            )));
        }
        let ratio = shift / cell_width;
        let mut m = ratio.floor();
        let mut alpha = ratio - m;
        if alpha >= 1.0 {
            m += 1.0;
            alpha = 0.0;
        }
        if m.abs() > isize::MAX as f64 / 4.0 {
            return Err(Error::invalid(format!(
                "translation shift {shift} is too large"
            )));
        }
        let p = basis.n_nodes();
        let (left_matrix, right_matrix, left_nodal, right_nodal) = if alpha == 0.0 {
            // Whole-cell shifts are exact relabelings.
            (
                Matrix::zeros(p, p),
                Matrix::identity(p),
                Matrix::zeros(p, p),
                Matrix::identity(p),
            )
        } else {
            let (left, right) = overlap_matrices(alpha, basis);
            let to_nodal = basis.modal_to_nodal();
            let to_modal = basis.nodal_to_modal();
            let left_nodal = to_nodal.matmul(&left).matmul(to_modal);
            let right_nodal = to_nodal.matmul(&right).matmul(to_modal);
            (left, right, left_nodal, right_nodal)
        };
        Ok(Self {
            cell_offset: m as isize,
            frac: alpha,
            left_matrix,
            right_matrix,
            left_nodal,
            right_nodal,
        })
    }

    pub fn cell_offset(&self) -> isize {
        self.cell_offset
    }

    pub fn frac(&self) -> f64 {
        self.frac
    }

    /// Modal operator applied to the upstream-left cell `i - m - 1`.
    pub fn left_matrix(&self) -> &Matrix {
        &self.left_matrix
    }

    /// Modal operator applied to cell `i - m`.
    pub fn right_matrix(&self) -> &Matrix {
        &self.right_matrix
    }

    pub fn n_nodes(&self) -> usize {
        self.left_matrix.rows()
    }

    /// Nodal-space update of one cell from its two source cells.
    #[inline]
    pub fn apply_cell(&self, left: &[f64], right: &[f64], out: &mut [f64]) {
        let p = self.n_nodes();
        for (i, o) in out.iter_mut().enumerate().take(p) {
            let a = self.left_nodal.row(i);
            let b = self.right_nodal.row(i);
            let mut s = 0.0;
            for j in 0..p {
                s += a[j] * left[j] + b[j] * right[j];
            }
            *o = s;
        }
    }

    /// Source cells `(i - m - 1, i - m)` of output cell `i` on a periodic line of `n_cells`.
    #[inline]
    pub fn source_cells(&self, i: usize, n_cells: usize) -> (usize, usize) {
        let n = n_cells as isize;
        let right = (i as isize - self.cell_offset).rem_euclid(n);
        let left = (right - 1).rem_euclid(n);
        (left as usize, right as usize)
    }

    /// Translates a periodic line of `n_cells * (k+1)` nodal values into `out`.
    pub fn apply_line_into(&self, line: &[f64], out: &mut [f64]) -> Result<()> {
        let p = self.n_nodes();
        if !line.len().is_multiple_of(p) || line.len() / p < 2 || out.len() != line.len() {
            return Err(Error::invalid(format!(
                "line of {} values (output {}) does not match {p} nodes per cell",
                line.len(),
                out.len()
            )));
        }
        let n = line.len() / p;
        for (i, cell_out) in out.chunks_exact_mut(p).enumerate() {
            let (l, r) = self.source_cells(i, n);
            self.apply_cell(
                &line[l * p..(l + 1) * p],
                &line[r * p..(r + 1) * p],
                cell_out,
            );
        }
        Ok(())
    }
}

/// Modal overlap matrices `(A, B)` for fractional shift `alpha` in [0, 1).
///
/// In reference coordinates the new cell `s in [-1, 1]` draws from the old
/// cell `i - m` at `s - 2 alpha` (for `s >= 2 alpha - 1`) and from cell
/// `i - m - 1` at `s - 2 alpha + 2` (for `s < 2 alpha - 1`).
fn overlap_matrices(alpha: f64, basis: &DgBasis) -> (Matrix, Matrix) {
    let p = basis.n_nodes();
    let k = basis.degree();
    let (q_nodes, q_weights) =
        gauss_legendre_rule(p).expect("basis degree is within the quadrature range");
    let split = 2.0 * alpha - 1.0;
    let mut left = Matrix::zeros(p, p);
    let mut right = Matrix::zeros(p, p);

    let accumulate = |target: &mut Matrix, lo: f64, hi: f64, source_offset: f64| {
        if hi <= lo {
            return;
        }
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (&q, &w) in q_nodes.iter().zip(&q_weights) {
            let s = mid + half * q;
            let p_new = legendre_values(s, k);
            let p_old = legendre_values(s + source_offset, k);
            for j in 0..p {
                let scale = (2.0 * j as f64 + 1.0) / 2.0 * w * half * p_new[j];
                for l in 0..p {
                    target[(j, l)] += scale * p_old[l];
                }
            }
        }
    };
    accumulate(&mut left, -1.0, split, 2.0 - 2.0 * alpha);
    accumulate(&mut right, split, 1.0, -2.0 * alpha);
    (left, right)
}

/// Builds the stencil for translating by `shift` on cells of width `cell_width`.
pub fn build_translation_stencil(
    shift: f64,
    cell_width: f64,
    basis: &DgBasis,
) -> Result<TranslationStencil> {
    TranslationStencil::new(shift, cell_width, basis)
}

/// Translates one periodic line of nodal values.
pub fn apply_sldg_translation(line: &[f64], stencil: &TranslationStencil) -> Result<Vec<f64>> {
    let mut out = vec![0.0; line.len()];
    stencil.apply_line_into(line, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weighted_sum(basis: &DgBasis, line: &[f64]) -> f64 {
        line.chunks_exact(basis.n_nodes())
            .map(|c| basis.cell_average(c))
            .sum()
    }

    #[test]
    fn zero_shift_is_identity() {
        let b = DgBasis::new(3).unwrap();
        let s = build_translation_stencil(0.0, 0.5, &b).unwrap();
        assert_eq!(s.cell_offset(), 0);
        assert_eq!(s.frac(), 0.0);
        assert!(s.left_matrix().max_abs_diff(&Matrix::zeros(4, 4)) == 0.0);
        assert!(s.right_matrix().max_abs_diff(&Matrix::identity(4)) < 1e-14);
    }

    #[test]
    fn whole_cell_shift_is_relabeling() {
        let b = DgBasis::new(2).unwrap();
        let h = 0.1;
        let s = build_translation_stencil(h, h, &b).unwrap();
        assert_eq!(s.cell_offset(), 1);
        assert_eq!(s.frac(), 0.0);
        let line: Vec<f64> = (0..12).map(|i| (i as f64).sin()).collect();
        let out = apply_sldg_translation(&line, &s).unwrap();
        for i in 0..4 {
            let src = (i + 3) % 4;
            for a in 0..3 {
                assert!((out[i * 3 + a] - line[src * 3 + a]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn piecewise_constant_quarter_shift() {
        let b = DgBasis::new(0).unwrap();
        let s = build_translation_stencil(0.25, 1.0, &b).unwrap();
        assert_eq!(s.cell_offset(), 0);
        assert!((s.left_matrix()[(0, 0)] - 0.25).abs() < 1e-15);
        assert!((s.right_matrix()[(0, 0)] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn negative_shift_decomposition() {
        let b = DgBasis::new(1).unwrap();
        let s = build_translation_stencil(-0.25, 1.0, &b).unwrap();
        assert_eq!(s.cell_offset(), -1);
        assert!((s.frac() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn constant_and_mass_invariants_of_matrices() {
        for k in 0..=6 {
            let b = DgBasis::new(k).unwrap();
            for alpha in [0.0, 0.1, 0.5, 0.77, 0.999] {
                let s = build_translation_stencil(alpha, 1.0, &b).unwrap();
                let (a, bm) = (s.left_matrix(), s.right_matrix());
                assert!((a[(0, 0)] + bm[(0, 0)] - 1.0).abs() < 1e-13);
                for j in 1..=k {
                    assert!((a[(j, 0)] + bm[(j, 0)]).abs() < 1e-13);
                    assert!(
                        (a[(0, j)] + bm[(0, j)]).abs() < 1e-13,
                        "k={k} a={alpha} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn constant_line_unchanged() {
        let b = DgBasis::new(4).unwrap();
        let line = vec![2.5; 5 * 9];
        let s = build_translation_stencil(13.37, 0.3, &b).unwrap();
        let out = apply_sldg_translation(&line, &s).unwrap();
        assert!(out.iter().all(|v| (v - 2.5).abs() < 1e-13));
        assert!((weighted_sum(&b, &out) - weighted_sum(&b, &line)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_arguments() {
        let b = DgBasis::new(1).unwrap();
        assert!(build_translation_stencil(f64::NAN, 1.0, &b).is_err());
        assert!(build_translation_stencil(0.1, 0.0, &b).is_err());
        let s = build_translation_stencil(0.1, 1.0, &b).unwrap();
        assert!(apply_sldg_translation(&[1.0; 5], &s).is_err());
    }
}
