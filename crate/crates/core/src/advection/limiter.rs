//! Average-preserving linear-scaling positivity limiter.

use crate::matrix::Matrix;
use crate::mesh_basis::DgBasis;

/// Result of limiting one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimiterOutcome {
    /// All values were already non-negative.
    Unchanged,
    /// Values were compressed toward the cell average.
    Scaled,
    /// The cell average itself was negative; the cell was clamped to zero.
    Clamped,
}

/// Limits `values` in place given the cell average computed from them.
pub fn limit_positivity_in_place(values: &mut [f64], cell_average: f64) -> LimiterOutcome {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min >= 0.0 {
        return LimiterOutcome::Unchanged;
    }
    if cell_average < 0.0 {
        values.iter_mut().for_each(|v| *v = 0.0);
        return LimiterOutcome::Clamped;
    }
    let theta = (cell_average / (cell_average - min)).min(1.0);
    for v in values.iter_mut() {
        *v = cell_average + theta * (*v - cell_average);
    }
    LimiterOutcome::Scaled
}

/// Sampling-based positivity control for whole cell polynomials.
///
/// [`limit_positivity_in_place`] only looks at the nodal values, so a cell
/// can pass it while its polynomial dips below zero between nodes. A
/// translated projection of such a cell may then have a negative average.
/// This limiter samples the polynomial at the cell ends and on a dense
/// uniform set and compresses toward the average using that minimum.
#[derive(Debug, Clone)]
pub struct CellPositivity {
    basis: DgBasis,
    sampler: Matrix,
}

impl CellPositivity {
    pub fn new(basis: &DgBasis) -> Self {
        let n = 8 * basis.n_nodes() + 1;
        let points: Vec<f64> = (0..=n).map(|i| -1.0 + 2.0 * i as f64 / n as f64).collect();
        Self {
            basis: basis.clone(),
            sampler: basis.interpolation_matrix(&points),
        }
    }

    /// Smallest sampled value of the cell polynomial (including its nodal values).
    pub fn polynomial_min(&self, values: &[f64]) -> f64 {
        let nodal = values.iter().copied().fold(f64::INFINITY, f64::min);
        (0..self.sampler.rows())
            .map(|i| {
                self.sampler
                    .row(i)
                    .iter()
                    .zip(values)
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
            })
            .fold(nodal, f64::min)
    }

    /// Makes the cell polynomial non-negative on the sampled points while
    /// keeping its average.
    pub fn limit_polynomial(&self, values: &mut [f64]) -> LimiterOutcome {
        let min = self.polynomial_min(values);
        if min >= 0.0 {
            return LimiterOutcome::Unchanged;
        }
        let avg = self.basis.cell_average(values);
        if avg < 0.0 {
            values.iter_mut().for_each(|v| *v = 0.0);
            return LimiterOutcome::Clamped;
        }
        let theta = (avg / (avg - min)).min(1.0);
        for v in values.iter_mut() {
            *v = avg + theta * (*v - avg);
        }
        LimiterOutcome::Scaled
    }

    /// Nodal limiter using this basis for the cell average.
    pub fn limit_nodal(&self, values: &mut [f64]) -> LimiterOutcome {
        let avg = self.basis.cell_average(values);
        limit_positivity_in_place(values, avg)
    }
}

/// Non-mutating form of [`limit_positivity_in_place`].
pub fn limit_positivity(cell_values: &[f64], cell_average: f64) -> (Vec<f64>, LimiterOutcome) {
    let mut out = cell_values.to_vec();
    let outcome = limit_positivity_in_place(&mut out, cell_average);
    (out, outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh_basis::DgBasis;

    #[test]
    fn nonnegative_cell_unchanged() {
        let (out, o) = limit_positivity(&[0.0, 1.0, 2.0], 1.0);
        assert_eq!(out, vec![0.0, 1.0, 2.0]);
        assert_eq!(o, LimiterOutcome::Unchanged);
    }

    #[test]
    fn scaling_preserves_average() {
        let b = DgBasis::new(2).unwrap();
        let vals = [-0.1, 0.5, 0.5];
        let avg = b.cell_average(&vals);
        let (out, o) = limit_positivity(&vals, avg);
        assert_eq!(o, LimiterOutcome::Scaled);
        assert!(out.iter().all(|&v| v >= -1e-14));
        assert!((b.cell_average(&out) - avg).abs() < 1e-13);
        // theta = avg / (avg + 0.1) applied to the minimum gives exactly 0.
        assert!(out[0].abs() < 1e-15);
    }

    #[test]
    fn polynomial_limiter_removes_interior_dips() {
        let b = DgBasis::new(2).unwrap();
        // Nodes are non-negative but the parabola through them is negative at the ends.
        let mut vals = vec![0.0, 1.0, 0.0];
        assert_eq!(
            limit_positivity(&vals, b.cell_average(&vals)).1,
            LimiterOutcome::Unchanged
        );
        let lim = CellPositivity::new(&b);
        assert!(lim.polynomial_min(&vals) < 0.0);
        let avg = b.cell_average(&vals);
        assert_eq!(lim.limit_polynomial(&mut vals), LimiterOutcome::Scaled);
        assert!(lim.polynomial_min(&vals) >= -1e-15);
        assert!((b.cell_average(&vals) - avg).abs() < 1e-15);
    }

    #[test]
    fn negative_average_clamps() {
        let (out, o) = limit_positivity(&[-0.2; 3], -0.2);
        assert_eq!(out, vec![0.0; 3]);
        assert_eq!(o, LimiterOutcome::Clamped);
    }
}
