//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use vlasov::mesh_basis::{evaluate_modal, gauss_legendre_rule, DgBasis, DistributionFunction};

/// Plasma dispersion function from its entire power series
/// `Z(z) = i sqrt(pi) exp(-z^2) - 2 z sum_n (-2 z^2)^n / (2n+1)!!`.
pub fn plasma_z(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let z2 = z * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 1..200 {
        term *= -2.0 * z2 / (2.0 * n as f64 + 1.0);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    i * std::f64::consts::PI.sqrt() * (-z2).exp() - 2.0 * z * sum
}

/// Newton iteration with a centered complex-step derivative.
pub fn complex_root(f: impl Fn(Complex64) -> Complex64, mut w: Complex64) -> Complex64 {
    let h = 1e-7;
    for _ in 0..100 {
        let fw = f(w);
        let d = (f(w + h) - f(w - h)) / (2.0 * h);
        let step = fw / d;
        w -= step;
        if step.norm() < 1e-15 {
            break;
        }
    }
    w
}

/// Root of the Maxwellian (Landau) dispersion relation at wave number `k`.
pub fn landau_root(k: f64, guess: Complex64) -> Complex64 {
    complex_root(
        |w| {
            let z = w / (2f64.sqrt() * k);
            1.0 + (1.0 + z * plasma_z(z)) / (k * k)
        },
        guess,
    )
}

/// Root of the symmetric two-beam dispersion relation (beams at +-`vb`).
pub fn two_stream_root(k: f64, vb: f64, guess: Complex64) -> Complex64 {
    complex_root(
        |w| {
            let zp = (w - k * vb) / (2f64.sqrt() * k);
            let zm = (w + k * vb) / (2f64.sqrt() * k);
            1.0 + 0.5 * ((1.0 + zp * plasma_z(zp)) + (1.0 + zm * plasma_z(zm))) / (k * k)
        },
        guess,
    )
}

/// Adaptive Simpson quadrature.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 50)
}

pub fn maxwellian(v: f64) -> f64 {
    (-0.5 * v * v).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Evaluates a periodic dG line (nodal values) at `xi` by modal summation.
pub fn eval_line(basis: &DgBasis, line: &[f64], origin: f64, h: f64, xi: f64) -> f64 {
    let p = basis.n_nodes();
    let n = line.len() / p;
    let length = n as f64 * h;
    let t = (xi - origin).rem_euclid(length) / h;
    let cell = (t.floor() as usize).min(n - 1);
    let s = (2.0 * (t - cell as f64) - 1.0).clamp(-1.0, 1.0);
    let modal = basis.to_modal(&line[cell * p..(cell + 1) * p]);
    evaluate_modal(&modal, s)
}

/// L2 projection onto the dG space of `g`, integrating each cell with
/// `points` Gauss points on each of the sub-intervals split at `breaks`
/// (given in reference coordinates).
pub fn project_line(
    basis: &DgBasis,
    n_cells: usize,
    origin: f64,
    h: f64,
    g: &dyn Fn(f64) -> f64,
    breaks: &[f64],
    points: usize,
) -> Vec<f64> {
    let p = basis.n_nodes();
    let (q, w) = gauss_legendre_rule(points).unwrap();
    let mut edges = vec![-1.0];
    edges.extend(breaks.iter().copied().filter(|b| *b > -1.0 && *b < 1.0));
    edges.push(1.0);
    let mut out = Vec::with_capacity(n_cells * p);
    for i in 0..n_cells {
        let mut modal = vec![0.0; p];
        for pair in edges.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            for (qi, wi) in q.iter().zip(&w) {
                let s = mid + half * qi;
                let x = origin + (i as f64 + 0.5 * (s + 1.0)) * h;
                let legendre = vlasov::mesh_basis::legendre_values(s, p - 1);
                let value = g(x);
                for j in 0..p {
                    modal[j] += (2.0 * j as f64 + 1.0) / 2.0 * wi * half * legendre[j] * value;
                }
            }
        }
        out.extend(basis.to_nodal(&modal));
    }
    out
}

/// `||u_h - g||_{L2}` over a periodic line, `points` Gauss points per cell.
pub fn line_l2_error(
    basis: &DgBasis,
    line: &[f64],
    origin: f64,
    h: f64,
    g: &dyn Fn(f64) -> f64,
    points: usize,
) -> f64 {
    let p = basis.n_nodes();
    let (q, w) = gauss_legendre_rule(points).unwrap();
    let mut sum = 0.0;
    for (i, cell) in line.chunks_exact(p).enumerate() {
        let modal = basis.to_modal(cell);
        for (qi, wi) in q.iter().zip(&w) {
            let x = origin + (i as f64 + 0.5 * (qi + 1.0)) * h;
            let d = evaluate_modal(&modal, *qi) - g(x);
            sum += 0.5 * h * wi * d * d;
        }
    }
    sum.sqrt()
}

/// Nodal line of `g` sampled at the Gauss nodes.
pub fn sample_line(
    basis: &DgBasis,
    n_cells: usize,
    origin: f64,
    h: f64,
    g: &dyn Fn(f64) -> f64,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_cells * basis.n_nodes());
    for i in 0..n_cells {
        for s in basis.nodes() {
            out.push(g(origin + (i as f64 + 0.5 * (s + 1.0)) * h));
        }
    }
    out
}

/// Discrete L2 norm of a dG line (exact for the stored polynomials).
pub fn line_l2(basis: &DgBasis, line: &[f64], h: f64) -> f64 {
    line.chunks_exact(basis.n_nodes())
        .map(|c| {
            0.5 * h
                * c.iter()
                    .zip(basis.weights())
                    .map(|(u, w)| w * u * u)
                    .sum::<f64>()
        })
        .sum::<f64>()
        .sqrt()
}

/// Line mass (integral of the dG function).
pub fn line_mass(basis: &DgBasis, line: &[f64], h: f64) -> f64 {
    line.chunks_exact(basis.n_nodes())
        .map(|c| h * basis.cell_average(c))
        .sum()
}

/// Phase-space L2 norm of the difference of two states on the same grid.
pub fn l2_difference(a: &DistributionFunction, b: &DistributionFunction) -> f64 {
    let g = a.grid();
    let p = g.n_nodes();
    let w = g.basis().weights();
    let jac = 0.25 * g.x().cell_width() * g.v().cell_width();
    let mut s = 0.0;
    for (ca, cb) in a
        .values()
        .chunks_exact(p * p)
        .zip(b.values().chunks_exact(p * p))
    {
        for i in 0..p {
            for j in 0..p {
                let d = ca[i * p + j] - cb[i * p + j];
                s += jac * w[i] * w[j] * d * d;
            }
        }
    }
    s.sqrt()
}

/// Least-squares order from `(h, error)` pairs: slope of log(error) vs log(h).
pub fn fitted_order(pairs: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = pairs.iter().map(|(h, e)| (h.ln(), e.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn dispersion_oracles_match_reference_roots() {
    // Reference roots cross-checked once against an independent Faddeeva-based solver.
    let w = landau_root(0.5, Complex64::new(1.4, -0.15));
    assert!((w.re - 1.415661888).abs() < 1e-7, "{w}");
    assert!((w.im + 0.153359466).abs() < 1e-7, "{w}");
    let w = two_stream_root(0.2, 2.4, Complex64::new(0.0, 0.2));
    assert!(
        w.re.abs() < 1e-10 && (w.im - 0.225844255).abs() < 1e-7,
        "{w}"
    );
}

/// Scenario state with `n_cells` per dimension at degree `k`.
pub fn scenario_state(
    kind: vlasov::app::ScenarioKind,
    params: vlasov::app::ScenarioParams,
    n_cells: usize,
    k: usize,
) -> (vlasov::app::Scenario, DistributionFunction) {
    let scenario = vlasov::app::make_scenario(kind, params).unwrap();
    let grid = scenario.grid(n_cells, k).unwrap();
    let f = scenario.initial_distribution(grid).unwrap();
    (scenario, f)
}

/// `||f_h - g||_{L2}` over phase space with a 6x6 Gauss rule per cell.
pub fn phase_l2_error(f: &DistributionFunction, g: &dyn Fn(f64, f64) -> f64) -> f64 {
    let grid = f.grid();
    let (q, w) = gauss_legendre_rule(6).unwrap();
    let (hx, hv) = (grid.x().cell_width(), grid.v().cell_width());
    let mut sum = 0.0;
    for ix in 0..grid.x().n_cells() {
        for iv in 0..grid.v().n_cells() {
            for (qa, wa) in q.iter().zip(&w) {
                for (qb, wb) in q.iter().zip(&w) {
                    let x = grid.x().map_point(ix, *qa);
                    let v = grid.v().map_point(iv, *qb);
                    let d = f.evaluate(x, v).unwrap() - g(x, v);
                    sum += 0.25 * hx * hv * wa * wb * d * d;
                }
            }
        }
    }
    sum.sqrt()
}
