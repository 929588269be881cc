//! Gauss-Legendre rules and Legendre polynomial evaluation on [-1, 1].

use crate::error::{Error, Result};

/// Largest number of points supported by [`gauss_legendre_rule`].
pub const MAX_RULE_POINTS: usize = 16;

/// Values `P_0(x), ..., P_n(x)` of the Legendre polynomials normalized so that `P_j(1) = 1`.
pub fn legendre_values(x: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(x);
    }
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0) * x * out[j] - jf * out[j - 1]) / (jf + 1.0);
        out.push(next);
    }
    out
}

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre_with_derivative(x: f64, n: usize) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0) * x * p - jf * p_prev) / (jf + 1.0);
        p_prev = p;
        p = next;
    }
    let nf = n as f64;
    let dp = nf * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1], nodes ascending.
pub fn gauss_legendre_rule(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(1..=MAX_RULE_POINTS).contains(&n) {
        return Err(Error::invalid(format!(
            "Gauss-Legendre point count {n} outside 1..={MAX_RULE_POINTS}"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    // Roots are symmetric; solve for the upper half and mirror.
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(x, n);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(x, n);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_is_midpoint() {
        let (x, w) = gauss_legendre_rule(1).unwrap();
        assert_eq!(x, vec![0.0]);
        assert!((w[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_closed_form() {
        let (x, w) = gauss_legendre_rule(2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn five_point_integrates_x8() {
        let (x, w) = gauss_legendre_rule(5).unwrap();
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((s - 2.0 / 9.0).abs() < 1e-13);
    }

    #[test]
    fn exact_up_to_degree_2n_minus_1() {
        for n in 1..=MAX_RULE_POINTS {
            let (x, w) = gauss_legendre_rule(n).unwrap();
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            assert!(x[0] > -1.0 && x[n - 1] < 1.0);
            for p in 0..2 * n {
                let exact = if p % 2 == 1 {
                    0.0
                } else {
                    2.0 / (p as f64 + 1.0)
                };
                let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p as i32)).sum();
                assert!((s - exact).abs() < 1e-13, "n={n} p={p} err={}", s - exact);
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(gauss_legendre_rule(0).is_err());
        assert!(gauss_legendre_rule(17).is_err());
    }

    #[test]
    fn legendre_normalization() {
        let v = legendre_values(1.0, 9);
        assert!(v.iter().all(|p| (p - 1.0).abs() < 1e-14));
        let v = legendre_values(0.5, 2);
        assert!((v[2] - (1.5 * 0.25 - 0.5)).abs() < 1e-15);
    }
}
