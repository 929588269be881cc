//! Conserved and monitored quantities of f, relative-error series, and
//! exponential-rate fits of oscillating time series.

use crate::error::{Error, Result};
use crate::fields::{electric_energy, FieldState};
use crate::matrix::Matrix;
use crate::mesh_basis::{gauss_legendre_rule, DistributionFunction};

/// Values of f at or below this level contribute nothing to the entropy.
pub const ENTROPY_FLOOR: f64 = 1e-30;

/// Default lower bound on the normalization of relative errors.
pub const RELATIVE_ERROR_FLOOR: f64 = 1e-12;

/// Thermal velocity of the normalized system.
pub const THERMAL_VELOCITY: f64 = 1.0;

/// One row of the invariant time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantRecord {
    pub t: f64,
    pub mass: f64,
    pub momentum: f64,
    pub kinetic_energy: f64,
    pub electric_energy: f64,
    pub total_energy: f64,
    pub l1_norm: f64,
    pub l2_norm: f64,
    pub entropy: f64,
    pub min_value: f64,
    pub negative_mass: f64,
}

impl InvariantRecord {
    /// Column names in output order.
    pub const COLUMNS: [&'static str; 11] = [
        "t",
        "mass",
        "momentum",
        "kinetic_energy",
        "electric_energy",
        "total_energy",
        "l1",
        "l2",
        "entropy",
        "min_value",
        "negative_mass",
    ];

    pub fn to_array(&self) -> [f64; 11] {
        [
            self.t,
            self.mass,
            self.momentum,
            self.kinetic_energy,
            self.electric_energy,
            self.total_energy,
            self.l1_norm,
            self.l2_norm,
            self.entropy,
            self.min_value,
            self.negative_mass,
        ]
    }

    pub fn from_array(a: [f64; 11]) -> Self {
        Self {
            t: a[0],
            mass: a[1],
            momentum: a[2],
            kinetic_energy: a[3],
            electric_energy: a[4],
            total_energy: a[5],
            l1_norm: a[6],
            l2_norm: a[7],
            entropy: a[8],
            min_value: a[9],
            negative_mass: a[10],
        }
    }
}

/// Computes every tracked quantity of `f` at time `t`.
///
/// Reductions run over x cells then v cells in index order, so results are
/// reproducible bit for bit.
pub fn compute_invariants(f: &DistributionFunction, field: &FieldState, t: f64) -> InvariantRecord {
    let g = f.grid();
    let basis = g.basis();
    let p = g.n_nodes();
    let w = basis.weights();
    let (hx, hv) = (g.x().cell_width(), g.v().cell_width());
    let jac = 0.25 * hx * hv;

    // v^2 f has degree k+2 in v; integrate it with k+2 points.
    let (fine_nodes, fine_weights) =
        gauss_legendre_rule(p + 1).expect("basis degree within quadrature range");
    let to_fine: Matrix = basis.interpolation_matrix(&fine_nodes);
    let mut line = vec![0.0; p];
    let mut fine = vec![0.0; p + 1];

    let mut mass = 0.0;
    let mut momentum = 0.0;
    let mut kinetic = 0.0;
    let mut l1 = 0.0;
    let mut l2_sq = 0.0;
    let mut entropy = 0.0;
    let mut negative_mass = 0.0;
    let mut min_value = f64::INFINITY;

    for ix in 0..g.x().n_cells() {
        for iv in 0..g.v().n_cells() {
            let start = g.index(ix, iv, 0, 0);
            let block = &f.values()[start..start + p * p];
            for a in 0..p {
                let mut kin_line = 0.0;
                for b in 0..p {
                    let value = block[a * p + b];
                    let weight = jac * w[a] * w[b];
                    let v = g.v_node(iv, b);
                    mass += weight * value;
                    momentum += weight * v * value;
                    l1 += weight * value.abs();
                    l2_sq += weight * value * value;
                    if value > ENTROPY_FLOOR {
                        entropy -= weight * value * value.ln();
                    } else if value < 0.0 {
                        negative_mass += weight * value;
                    }
                    min_value = min_value.min(value);
                    line[b] = value;
                }
                to_fine.mul_vec_into(&line, &mut fine);
                for (q, (&s, &wq)) in fine_nodes.iter().zip(&fine_weights).enumerate() {
                    let v = g.v().map_point(iv, s);
                    kin_line += wq * v * v * fine[q];
                }
                kinetic += 0.5 * jac * w[a] * kin_line;
            }
        }
    }
    let electric = electric_energy(field, g.x(), basis);
    InvariantRecord {
        t,
        mass,
        momentum,
        kinetic_energy: kinetic,
        electric_energy: electric,
        total_energy: kinetic + electric,
        l1_norm: l1,
        l2_norm: l2_sq.sqrt(),
        entropy,
        min_value,
        negative_mass,
    }
}

/// Relative deviation of each tracked quantity from its first recorded value.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RelativeErrorSeries {
    pub t: Vec<f64>,
    pub mass: Vec<f64>,
    pub momentum: Vec<f64>,
    pub kinetic_energy: Vec<f64>,
    pub electric_energy: Vec<f64>,
    pub total_energy: Vec<f64>,
    pub l1_norm: Vec<f64>,
    pub l2_norm: Vec<f64>,
    pub entropy: Vec<f64>,
}

/// `(q(t) - q(0)) / max(|q(0)|, floor)`; momentum is normalized by
/// `mass(0) * THERMAL_VELOCITY` since it typically starts at zero.
pub fn relative_error_series(records: &[InvariantRecord]) -> Result<RelativeErrorSeries> {
    let first = records
        .first()
        .ok_or_else(|| Error::invalid("relative error series needs at least one record"))?;
    let rel = |q0: f64| {
        let scale = q0.abs().max(RELATIVE_ERROR_FLOOR);
        move |q: f64| (q - q0) / scale
    };
    let momentum_scale = (first.mass.abs() * THERMAL_VELOCITY).max(RELATIVE_ERROR_FLOOR);
    let series = |get: fn(&InvariantRecord) -> f64| -> Vec<f64> {
        let r = rel(get(first));
        records.iter().map(|rec| r(get(rec))).collect()
    };
    Ok(RelativeErrorSeries {
        t: records.iter().map(|r| r.t).collect(),
        mass: series(|r| r.mass),
        momentum: records
            .iter()
            .map(|r| (r.momentum - first.momentum) / momentum_scale)
            .collect(),
        kinetic_energy: series(|r| r.kinetic_energy),
        electric_energy: series(|r| r.electric_energy),
        total_energy: series(|r| r.total_energy),
        l1_norm: series(|r| r.l1_norm),
        l2_norm: series(|r| r.l2_norm),
        entropy: series(|r| r.entropy),
    })
}

/// Least-squares slope of `ln(value)` over the local maxima inside
/// `window = (t_start, t_end)`.
///
/// Maxima use a three-point test on the log-series. A window without any
/// local extremum is treated as its own envelope; one with fewer than four
/// extrema is rejected.
pub fn fit_exponential_rate(times: &[f64], values: &[f64], window: (f64, f64)) -> Result<f64> {
    if times.len() != values.len() {
        return Err(Error::invalid(format!(
            "times ({}) and values ({}) differ in length",
            times.len(),
            values.len()
        )));
    }
    let (t0, t1) = window;
    let selected: Vec<(f64, f64)> = times
        .iter()
        .zip(values)
        .filter(|(t, _)| **t >= t0 && **t <= t1)
        .map(|(&t, &v)| (t, v))
        .collect();
    if selected.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "only {} samples in window [{t0}, {t1}]",
            selected.len()
        )));
    }
    if let Some((t, v)) = selected.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::invalid(format!("non-positive value {v} at t = {t}")));
    }
    let logs: Vec<(f64, f64)> = selected.iter().map(|&(t, v)| (t, v.ln())).collect();
    let mut maxima = Vec::new();
    let mut extrema = 0usize;
    for i in 1..logs.len() - 1 {
        let (prev, cur, next) = (logs[i - 1].1, logs[i].1, logs[i + 1].1);
        if cur > prev && cur >= next {
            maxima.push(logs[i]);
            extrema += 1;
        } else if cur < prev && cur <= next {
            extrema += 1;
        }
    }
    let points = match extrema {
        0 => logs,
        1..=3 => {
            return Err(Error::InsufficientData(format!(
                "{extrema} local extrema in window [{t0}, {t1}], need at least 4"
            )))
        }
        _ => maxima,
    };
    Ok(least_squares_slope(&points))
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mt = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(t, y) in points {
        sxy += (t - mt) * (y - my);
        sxx += (t - mt) * (t - mt);
    }
    sxy / sxx
}
