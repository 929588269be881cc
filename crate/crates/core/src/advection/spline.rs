//! Periodic cubic-spline interpolation on uniformly spaced samples.

use crate::error::{Error, Result};

/// C2 periodic cubic spline through `n` equally spaced samples, in index
/// coordinates (sample `i` sits at position `i`, period `n`).
#[derive(Debug, Clone, PartialEq)]
pub struct SplineLine {
    samples: Vec<f64>,
    /// Second derivatives at the samples.
    moments: Vec<f64>,
}

impl SplineLine {
    pub fn new(samples: &[f64]) -> Result<Self> {
        let n = samples.len();
        if n < 4 {
            return Err(Error::invalid(format!(
                "periodic spline needs at least 4 samples, got {n}"
            )));
        }
        let rhs: Vec<f64> = (0..n)
            .map(|i| {
                let prev = samples[(i + n - 1) % n];
                let next = samples[(i + 1) % n];
                6.0 * (next - 2.0 * samples[i] + prev)
            })
            .collect();
        let moments = solve_cyclic_tridiagonal(1.0, 4.0, 1.0, &rhs);
        Ok(Self {
            samples: samples.to_vec(),
            moments,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn moments(&self) -> &[f64] {
        &self.moments
    }

    /// Spline value at index-space position `t`, wrapped periodically.
    pub fn evaluate(&self, t: f64) -> f64 {
        let n = self.samples.len();
        let t = t.rem_euclid(n as f64);
        let i = (t.floor() as usize).min(n - 1);
        let u = t - i as f64;
        let j = (i + 1) % n;
        let w = 1.0 - u;
        let (mi, mj) = (self.moments[i], self.moments[j]);
        mi * w * w * w / 6.0
            + mj * u * u * u / 6.0
            + (self.samples[i] - mi / 6.0) * w
            + (self.samples[j] - mj / 6.0) * u
    }
}

/// Solves the constant-coefficient cyclic tridiagonal system
/// `lower x[i-1] + diag x[i] + upper x[i+1] = rhs[i]` (indices periodic)
/// by the Sherman-Morrison correction of the Thomas algorithm.
pub fn solve_cyclic_tridiagonal(lower: f64, diag: f64, upper: f64, rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    assert!(n >= 3, "cyclic system needs at least 3 unknowns");
    // Corner entries: A[0][n-1] = lower, A[n-1][0] = upper.
    let gamma = -diag;
    let mut bb = vec![diag; n];
    bb[0] = diag - gamma;
    bb[n - 1] = diag - upper * lower / gamma;

    let x = thomas(lower, &bb, upper, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = upper;
    let z = thomas(lower, &bb, upper, &u);
    let fact = (x[0] + lower * x[n - 1] / gamma) / (1.0 + z[0] + lower * z[n - 1] / gamma);
    x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect()
}

fn thomas(lower: f64, diag: &[f64], upper: f64, rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = upper / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - lower * c[i - 1];
        c[i] = upper / m;
        d[i] = (rhs[i] - lower * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

pub fn build_periodic_spline(samples: &[f64]) -> Result<SplineLine> {
    SplineLine::new(samples)
}

/// Output `i` is the spline through `samples` evaluated at `xi_i - shift`.
pub fn apply_spline_translation(samples: &[f64], shift: f64, spacing: f64) -> Result<Vec<f64>> {
    if !shift.is_finite() || !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::invalid(format!(
            "spline translation needs finite shift and positive spacing (got {shift}, {spacing})"
        )));
    }
    let spline = SplineLine::new(samples)?;
    let s = shift / spacing;
    Ok((0..samples.len())
        .map(|i| spline.evaluate(i as f64 - s))
        .collect())
}
