//! Fast self-test of the core invariants, run by `vlasov check`.

use crate::advection::{apply_sldg_translation, build_periodic_spline, build_translation_stencil};
use crate::diagnostics::compute_invariants;
use crate::error::Result;
use crate::integrator::{Backend, Integrator, StepConfig};
use crate::matrix::Matrix;
use crate::mesh_basis::{gauss_legendre_rule, DgBasis, MAX_DEGREE, MAX_RULE_POINTS};

use super::scenario::{make_scenario, ScenarioKind, ScenarioParams};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, error: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name,
        passed: error <= tolerance,
        detail: format!("error {error:.3e} (tolerance {tolerance:.0e})"),
    }
}

/// Deterministic pseudo-random data in [-1, 1].
fn scrambled(n: usize, seed: f64) -> Vec<f64> {
    (0..n)
        .map(|i| ((i as f64 + seed) * 12.9898).sin() * 0.5 + ((i as f64) * 0.37).cos() * 0.5)
        .collect()
}

pub fn run_checks() -> Result<Vec<CheckResult>> {
    let mut results = Vec::new();

    let mut quad_err: f64 = 0.0;
    for n in 1..=MAX_RULE_POINTS {
        let (x, w) = gauss_legendre_rule(n)?;
        for p in 0..2 * n {
            let exact = if p % 2 == 1 {
                0.0
            } else {
                2.0 / (p as f64 + 1.0)
            };
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p as i32)).sum();
            quad_err = quad_err.max((s - exact).abs());
        }
    }
    results.push(check("quadrature exactness", quad_err, 1e-13));

    let mut transform_err: f64 = 0.0;
    for k in 0..=MAX_DEGREE {
        let b = DgBasis::new(k)?;
        let prod = b.nodal_to_modal().matmul(b.modal_to_nodal());
        transform_err = transform_err.max(prod.max_abs_diff(&Matrix::identity(k + 1)));
    }
    results.push(check("modal/nodal round trip", transform_err, 1e-13));

    let mut mass_err: f64 = 0.0;
    let mut l2_growth: f64 = 0.0;
    for k in 0..=4 {
        let b = DgBasis::new(k)?;
        let line = scrambled(16 * (k + 1), k as f64);
        for shift in [0.3, -2.71, 517.25] {
            let s = build_translation_stencil(shift, 0.5, &b)?;
            let out = apply_sldg_translation(&line, &s)?;
            let sum = |l: &[f64]| {
                l.chunks_exact(k + 1)
                    .map(|c| b.cell_average(c))
                    .sum::<f64>()
            };
            let sq = |l: &[f64]| {
                l.chunks_exact(k + 1)
                    .map(|c| {
                        c.iter()
                            .zip(b.weights())
                            .map(|(u, w)| w * u * u)
                            .sum::<f64>()
                    })
                    .sum::<f64>()
            };
            mass_err = mass_err.max((sum(&out) - sum(&line)).abs() / sum(&line).abs().max(1.0));
            l2_growth = l2_growth.max((sq(&out).sqrt() - sq(&line).sqrt()) / sq(&line).sqrt());
        }
    }
    results.push(check("sLdG line mass", mass_err, 1e-12));
    results.push(check("sLdG L2 contraction", l2_growth.max(0.0), 1e-12));

    let samples = scrambled(32, 3.0);
    let spline = build_periodic_spline(&samples)?;
    let interp_err = samples
        .iter()
        .enumerate()
        .map(|(i, y)| (spline.evaluate(i as f64) - y).abs())
        .fold(0.0, f64::max);
    results.push(check("spline interpolation", interp_err, 1e-12));

    let uniform = make_scenario(ScenarioKind::Uniform, ScenarioParams::default())?;
    let grid = uniform.grid(8, 2)?;
    let f0 = uniform.initial_distribution(grid.clone())?;
    let mut integrator = Integrator::new(grid, StepConfig::new(0.1, Backend::Sldg))?;
    let mut f = f0.clone();
    for _ in 0..10 {
        f = integrator.step(&f)?.0;
    }
    let drift = f
        .values()
        .iter()
        .zip(f0.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    results.push(check("uniform equilibrium fixed point", drift, 1e-12));

    let landau = make_scenario(ScenarioKind::LandauWeak, ScenarioParams::default())?;
    let grid = landau.grid(12, 2)?;
    let mut f = landau.initial_distribution(grid.clone())?;
    let mut integrator = Integrator::new(grid, StepConfig::new(0.1, Backend::Sldg))?;
    let first = compute_invariants(&f, &integrator.field_of(&f)?, 0.0);
    for _ in 0..20 {
        f = integrator.step(&f)?.0;
    }
    let last = compute_invariants(&f, &integrator.field_of(&f)?, 2.0);
    results.push(check(
        "Landau mass conservation",
        ((last.mass - first.mass) / first.mass).abs(),
        1e-12,
    ));
    results.push(check(
        "Landau momentum conservation",
        ((last.momentum - first.momentum) / first.mass).abs(),
        1e-10,
    ));
    Ok(results)
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_checks_pass() {
        for r in super::run_checks().unwrap() {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
