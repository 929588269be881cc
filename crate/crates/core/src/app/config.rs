//! Line-oriented `key = value` run configuration.

use std::collections::HashMap;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::integrator::{Backend, StepConfig};
use crate::mesh_basis::MAX_DEGREE;

use super::scenario::{ScenarioKind, ScenarioParams};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: ScenarioKind,
    /// Polynomial order, `degree + 1`.
    pub order: usize,
    pub dof_per_dim: usize,
    pub tau: f64,
    pub t_end: f64,
    pub backend: Backend,
    pub limiter: bool,
    /// Velocity cutoff; `None` uses the scenario default.
    pub v_max: Option<f64>,
    pub alpha: Option<f64>,
    pub k_x: Option<f64>,
    pub beam_velocity: Option<f64>,
    /// Time between diagnostic records; `None` records every step.
    pub diag_interval: Option<f64>,
    pub snapshot_times: Vec<f64>,
    pub nodal_snapshots: bool,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scenario: ScenarioKind::LandauWeak,
            order: 3,
            dof_per_dim: 64,
            tau: 0.1,
            t_end: 50.0,
            backend: Backend::Sldg,
            limiter: false,
            v_max: None,
            alpha: None,
            k_x: None,
            beam_velocity: None,
            diag_interval: None,
            snapshot_times: Vec::new(),
            nodal_snapshots: false,
            output_dir: PathBuf::from("output"),
        }
    }
}

pub const KEYS: [&str; 15] = [
    "scenario",
    "order",
    "dof_per_dim",
    "tau",
    "t_end",
    "backend",
    "limiter",
    "v_max",
    "alpha",
    "k_x",
    "beam_velocity",
    "diag_interval",
    "snapshot_times",
    "nodal_snapshots",
    "output_dir",
];

impl RunConfig {
    /// Cells per dimension, `floor(dof_per_dim / order)`.
    pub fn n_cells(&self) -> usize {
        self.dof_per_dim / self.order.max(1)
    }

    pub fn degree(&self) -> usize {
        self.order - 1
    }

    /// Degrees of freedom actually used per dimension.
    pub fn actual_dof(&self) -> usize {
        self.n_cells() * self.order
    }

    pub fn diag_interval(&self) -> f64 {
        self.diag_interval.unwrap_or(self.tau)
    }

    pub fn scenario_params(&self) -> ScenarioParams {
        ScenarioParams {
            alpha: self.alpha,
            k_x: self.k_x,
            beam_velocity: self.beam_velocity,
            v_max: self.v_max,
        }
    }

    pub fn step_config(&self, self_consistent: bool) -> StepConfig {
        StepConfig {
            tau: self.tau,
            backend: self.backend,
            limiter_enabled: self.limiter,
            self_consistent,
        }
    }

    /// Checks the cross-field invariants; `lines` maps keys to source lines.
    fn validate(&self, lines: &HashMap<&str, usize>) -> Result<()> {
        let fail = |key: &str, message: String| Error::Config {
            line: lines.get(key).copied().unwrap_or(0),
            key: key.to_string(),
            message,
        };
        if self.order == 0 || self.order > MAX_DEGREE + 1 {
            return Err(fail(
                "order",
                format!("order must lie in 1..={}", MAX_DEGREE + 1),
            ));
        }
        if self.dof_per_dim < self.order || self.n_cells() < 2 {
            return Err(fail(
                "dof_per_dim",
                format!(
                    "dof_per_dim = {} gives {} cells at order {}; need at least 2",
                    self.dof_per_dim,
                    self.n_cells(),
                    self.order
                ),
            ));
        }
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(fail("tau", "time step must be positive".into()));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(fail("t_end", "final time must be positive".into()));
        }
        if self.backend == Backend::Spline && self.order != 1 {
            return Err(fail(
                "backend",
                "the spline backend works on uniform samples and requires order = 1".into(),
            ));
        }
        if let Some(v) = self.v_max {
            if !(v.is_finite() && v > 0.0) {
                return Err(fail("v_max", "v_max must be positive".into()));
            }
        }
        if let Some(d) = self.diag_interval {
            let ratio = d / self.tau;
            if !(d > 0.0 && ratio.round() >= 1.0 && (ratio - ratio.round()).abs() < 1e-9 * ratio) {
                return Err(fail(
                    "diag_interval",
                    "must be a positive multiple of tau".into(),
                ));
            }
        }
        if let Some(t) = self
            .snapshot_times
            .iter()
            .find(|&&t| !(t >= 0.0 && t <= self.t_end))
        {
            return Err(fail(
                "snapshot_times",
                format!("snapshot time {t} outside [0, t_end]"),
            ));
        }
        Ok(())
    }

    /// Every field as `key = value` lines, defaults resolved.
    pub fn echo(&self) -> Vec<(String, String)> {
        let defaults = self.scenario.defaults();
        let opt = |v: Option<f64>, d: Option<f64>| format!("{}", v.or(d).unwrap_or(0.0));
        vec![
            ("scenario".into(), self.scenario.name().into()),
            ("order".into(), self.order.to_string()),
            ("dof_per_dim".into(), self.dof_per_dim.to_string()),
            ("tau".into(), self.tau.to_string()),
            ("t_end".into(), self.t_end.to_string()),
            ("backend".into(), self.backend.name().into()),
            ("limiter".into(), self.limiter.to_string()),
            ("v_max".into(), opt(self.v_max, defaults.v_max)),
            ("alpha".into(), opt(self.alpha, defaults.alpha)),
            ("k_x".into(), opt(self.k_x, defaults.k_x)),
            (
                "beam_velocity".into(),
                opt(self.beam_velocity, defaults.beam_velocity),
            ),
            ("diag_interval".into(), self.diag_interval().to_string()),
            (
                "snapshot_times".into(),
                self.snapshot_times
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("nodal_snapshots".into(), self.nodal_snapshots.to_string()),
            ("output_dir".into(), self.output_dir.display().to_string()),
        ]
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| Error::Config {
        line,
        key: key.to_string(),
        message: format!("cannot parse `{value}`: {e}"),
    })
}

fn parse_bool(key: &str, value: &str, line: usize) -> Result<bool> {
    match value {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(Error::Config {
            line,
            key: key.to_string(),
            message: format!("cannot parse `{value}` as a boolean"),
        }),
    }
}

/// Parses config text; omitted keys keep their defaults.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut lines: HashMap<&str, usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Config {
            line,
            key: content.to_string(),
            message: "expected `key = value`".into(),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(Error::Config {
                line,
                key: key.to_string(),
                message: "unknown key".into(),
            });
        };
        if lines.insert(known, line).is_some() {
            return Err(Error::Config {
                line,
                key: key.to_string(),
                message: "duplicate key".into(),
            });
        }
        match known {
            "scenario" => {
                cfg.scenario = ScenarioKind::parse(value).map_err(|e| Error::Config {
                    line,
                    key: key.into(),
                    message: e.to_string(),
                })?
            }
            "order" => cfg.order = parse_value(key, value, line)?,
            "dof_per_dim" => cfg.dof_per_dim = parse_value(key, value, line)?,
            "tau" => cfg.tau = parse_value(key, value, line)?,
            "t_end" => cfg.t_end = parse_value(key, value, line)?,
            "backend" => cfg.backend = parse_value(key, value, line)?,
            "limiter" => cfg.limiter = parse_bool(key, value, line)?,
            "v_max" => cfg.v_max = Some(parse_value(key, value, line)?),
            "alpha" => cfg.alpha = Some(parse_value(key, value, line)?),
            "k_x" => cfg.k_x = Some(parse_value(key, value, line)?),
            "beam_velocity" => cfg.beam_velocity = Some(parse_value(key, value, line)?),
            "diag_interval" => cfg.diag_interval = Some(parse_value(key, value, line)?),
            "snapshot_times" => {
                cfg.snapshot_times = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_value(key, s, line))
                    .collect::<Result<_>>()?
            }
            "nodal_snapshots" => cfg.nodal_snapshots = parse_bool(key, value, line)?,
            "output_dir" => cfg.output_dir = PathBuf::from(value),
            _ => unreachable!("key list and match arms agree"),
        }
    }
    cfg.validate(&lines)?;
    Ok(cfg)
}
