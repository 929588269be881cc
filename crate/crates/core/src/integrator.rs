//! Strang-split time stepping: half x-advection, field solve, full
//! v-advection, half x-advection.

use std::sync::Arc;

use rayon::prelude::*;

use crate::advection::{
    apply_spline_translation, CellPositivity, LimiterOutcome, TranslationStencil,
};
use crate::diagnostics::{compute_invariants, InvariantRecord};
use crate::error::{Error, Result};
use crate::fields::{compute_density, solve_poisson, FieldState};
use crate::mesh_basis::{DistributionFunction, PhaseSpaceGrid};

/// 1D translation backend used by both sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Semi-Lagrangian discontinuous Galerkin (exact translation + L2 projection).
    Sldg,
    /// Periodic cubic-spline interpolation; requires one node per cell.
    Spline,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Sldg => "sldg",
            Backend::Spline => "spline",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sldg" => Ok(Backend::Sldg),
            "spline" => Ok(Backend::Spline),
            other => Err(format!(
                "unknown backend `{other}` (expected sldg or spline)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepConfig {
    pub tau: f64,
    pub backend: Backend,
    pub limiter_enabled: bool,
    /// When false the field is held at zero (free streaming).
    pub self_consistent: bool,
}

impl StepConfig {
    pub fn new(tau: f64, backend: Backend) -> Self {
        Self {
            tau,
            backend,
            limiter_enabled: false,
            self_consistent: true,
        }
    }

    pub fn validate(&self, grid: &PhaseSpaceGrid) -> Result<()> {
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(Error::invalid(format!(
                "time step {} must be positive",
                self.tau
            )));
        }
        if self.backend == Backend::Spline && grid.basis().degree() != 0 {
            return Err(Error::invalid(
                "the spline backend needs uniformly spaced samples: use order 1",
            ));
        }
        Ok(())
    }
}

/// Counts of limiter interventions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LimiterStats {
    /// Cells whose nodal values were compressed after a sweep.
    pub scaled: usize,
    /// Cells with a negative average, clamped to zero (changes mass).
    pub clamped: usize,
    /// Cells whose polynomial was made non-negative before a sweep.
    pub presmoothed: usize,
}

impl LimiterStats {
    fn record(&mut self, outcome: LimiterOutcome) {
        match outcome {
            LimiterOutcome::Unchanged => {}
            LimiterOutcome::Scaled => self.scaled += 1,
            LimiterOutcome::Clamped => self.clamped += 1,
        }
    }

    fn record_pre(&mut self, outcome: LimiterOutcome) {
        match outcome {
            LimiterOutcome::Unchanged => {}
            LimiterOutcome::Scaled => self.presmoothed += 1,
            LimiterOutcome::Clamped => self.clamped += 1,
        }
    }

    fn merge(mut self, other: LimiterStats) -> LimiterStats {
        self.scaled += other.scaled;
        self.clamped += other.clamped;
        self.presmoothed += other.presmoothed;
        self
    }
}

/// Makes every x-direction cell polynomial non-negative.
fn presmooth_x(
    grid: &PhaseSpaceGrid,
    values: &mut [f64],
    limiter: &CellPositivity,
) -> LimiterStats {
    let p = grid.n_nodes();
    let nv = grid.v().n_cells();
    values
        .par_chunks_mut(grid.x_cell_block())
        .map(|block| {
            let mut stats = LimiterStats::default();
            let mut cell = vec![0.0; p];
            for iv in 0..nv {
                for b in 0..p {
                    for a in 0..p {
                        cell[a] = block[(iv * p + a) * p + b];
                    }
                    let outcome = limiter.limit_polynomial(&mut cell);
                    if outcome != LimiterOutcome::Unchanged {
                        for a in 0..p {
                            block[(iv * p + a) * p + b] = cell[a];
                        }
                    }
                    stats.record_pre(outcome);
                }
            }
            stats
        })
        .reduce(LimiterStats::default, LimiterStats::merge)
}

/// Makes every v-direction cell polynomial non-negative.
fn presmooth_v(
    grid: &PhaseSpaceGrid,
    values: &mut [f64],
    limiter: &CellPositivity,
) -> LimiterStats {
    let p = grid.n_nodes();
    values
        .par_chunks_mut(p)
        .map(|cell| {
            let mut stats = LimiterStats::default();
            stats.record_pre(limiter.limit_polynomial(cell));
            stats
        })
        .reduce(LimiterStats::default, LimiterStats::merge)
}

/// One x-translation stencil per velocity node `(iv, b)`, flattened as `iv * p + b`.
fn x_stencils(grid: &PhaseSpaceGrid, dt: f64) -> Result<Vec<TranslationStencil>> {
    let p = grid.n_nodes();
    let mut out = Vec::with_capacity(grid.v().n_cells() * p);
    for iv in 0..grid.v().n_cells() {
        for b in 0..p {
            out.push(TranslationStencil::new(
                grid.v_node(iv, b) * dt,
                grid.x().cell_width(),
                grid.basis(),
            )?);
        }
    }
    Ok(out)
}

fn sldg_x_sweep(
    f: &DistributionFunction,
    stencils: &[TranslationStencil],
    limiter: Option<&CellPositivity>,
) -> (DistributionFunction, LimiterStats) {
    let g = f.grid();
    let p = g.n_nodes();
    let (nx, nv) = (g.x().n_cells(), g.v().n_cells());
    let mut pre = LimiterStats::default();
    let smoothed;
    let old = match limiter {
        Some(lim) => {
            let mut copy = f.values().to_vec();
            pre = presmooth_x(g, &mut copy, lim);
            smoothed = copy;
            &smoothed[..]
        }
        None => f.values(),
    };
    let mut out = vec![0.0; old.len()];
    let stats = out
        .par_chunks_mut(g.x_cell_block())
        .enumerate()
        .map(|(ix, block)| {
            let mut stats = LimiterStats::default();
            let mut left = vec![0.0; p];
            let mut right = vec![0.0; p];
            let mut cell = vec![0.0; p];
            for iv in 0..nv {
                for b in 0..p {
                    let stencil = &stencils[iv * p + b];
                    let (l, r) = stencil.source_cells(ix, nx);
                    for a in 0..p {
                        left[a] = old[g.index(l, iv, a, b)];
                        right[a] = old[g.index(r, iv, a, b)];
                    }
                    stencil.apply_cell(&left, &right, &mut cell);
                    if let Some(lim) = limiter {
                        stats.record(lim.limit_nodal(&mut cell));
                    }
                    for a in 0..p {
                        block[(iv * p + a) * p + b] = cell[a];
                    }
                }
            }
            stats
        })
        .reduce(LimiterStats::default, LimiterStats::merge);
    let grid = f.shared_grid().clone();
    (
        DistributionFunction::from_values(grid, out).expect("same layout"),
        stats.merge(pre),
    )
}

fn sldg_v_sweep(
    f: &DistributionFunction,
    e_nodal: &[f64],
    dt: f64,
    limiter: Option<&CellPositivity>,
) -> Result<(DistributionFunction, LimiterStats)> {
    let g = f.grid();
    let p = g.n_nodes();
    let nv = g.v().n_cells();
    let basis = g.basis();
    let hv = g.v().cell_width();
    let mut out = f.values().to_vec();
    let pre = match limiter {
        Some(lim) => presmooth_v(g, &mut out, lim),
        None => LimiterStats::default(),
    };
    let stats = out
        .par_chunks_mut(g.x_cell_block())
        .enumerate()
        .map(|(ix, block)| -> Result<LimiterStats> {
            let mut stats = LimiterStats::default();
            let mut line = vec![0.0; nv * p];
            let mut moved = vec![0.0; nv * p];
            for a in 0..p {
                let shift = e_nodal[ix * p + a] * dt;
                if shift == 0.0 && limiter.is_none() {
                    continue;
                }
                let stencil = TranslationStencil::new(shift, hv, basis)?;
                for iv in 0..nv {
                    for b in 0..p {
                        line[iv * p + b] = block[(iv * p + a) * p + b];
                    }
                }
                stencil.apply_line_into(&line, &mut moved)?;
                for (iv, cell) in moved.chunks_exact_mut(p).enumerate() {
                    if let Some(lim) = limiter {
                        stats.record(lim.limit_nodal(cell));
                    }
                    for b in 0..p {
                        block[(iv * p + a) * p + b] = cell[b];
                    }
                }
            }
            Ok(stats)
        })
        .try_reduce(LimiterStats::default, |a, b| Ok(a.merge(b)))?;
    let grid = f.shared_grid().clone();
    Ok((
        DistributionFunction::from_values(grid, out)?,
        stats.merge(pre),
    ))
}

fn spline_x_sweep(f: &DistributionFunction, dt: f64) -> Result<DistributionFunction> {
    let g = f.grid();
    let (nx, nv) = (g.x().n_cells(), g.v().n_cells());
    let hx = g.x().cell_width();
    let old = f.values();
    let rows: Vec<Vec<f64>> = (0..nv)
        .into_par_iter()
        .map(|iv| {
            let row: Vec<f64> = (0..nx).map(|ix| old[ix * nv + iv]).collect();
            apply_spline_translation(&row, g.v_node(iv, 0) * dt, hx)
        })
        .collect::<Result<_>>()?;
    let mut out = vec![0.0; old.len()];
    for (iv, row) in rows.iter().enumerate() {
        for (ix, value) in row.iter().enumerate() {
            out[ix * nv + iv] = *value;
        }
    }
    DistributionFunction::from_values(f.shared_grid().clone(), out)
}

fn spline_v_sweep(
    f: &DistributionFunction,
    e_nodal: &[f64],
    dt: f64,
) -> Result<DistributionFunction> {
    let g = f.grid();
    let nv = g.v().n_cells();
    let hv = g.v().cell_width();
    let mut out = f.values().to_vec();
    out.par_chunks_mut(nv)
        .enumerate()
        .try_for_each(|(ix, column)| -> Result<()> {
            let shift = e_nodal[ix] * dt;
            if shift != 0.0 {
                let moved = apply_spline_translation(column, shift, hv)?;
                column.copy_from_slice(&moved);
            }
            Ok(())
        })?;
    DistributionFunction::from_values(f.shared_grid().clone(), out)
}

/// Translates every velocity row in x by `v * dt`.
pub fn advect_x(
    f: &DistributionFunction,
    dt: f64,
    backend: Backend,
    limiter: bool,
) -> Result<DistributionFunction> {
    match backend {
        Backend::Sldg => {
            let stencils = x_stencils(f.grid(), dt)?;
            let lim = limiter.then(|| CellPositivity::new(f.grid().basis()));
            Ok(sldg_x_sweep(f, &stencils, lim.as_ref()).0)
        }
        Backend::Spline => spline_x_sweep(f, dt),
    }
}

/// Translates every spatial column in v by `E(x) * dt`.
pub fn advect_v(
    f: &DistributionFunction,
    field: &FieldState,
    dt: f64,
    backend: Backend,
    limiter: bool,
) -> Result<DistributionFunction> {
    match backend {
        Backend::Sldg => {
            let lim = limiter.then(|| CellPositivity::new(f.grid().basis()));
            Ok(sldg_v_sweep(f, &field.e_nodal, dt, lim.as_ref())?.0)
        }
        Backend::Spline => spline_v_sweep(f, &field.e_nodal, dt),
    }
}

/// Strang-split stepper with cached half-step x stencils.
#[derive(Debug, Clone)]
pub struct Integrator {
    grid: Arc<PhaseSpaceGrid>,
    cfg: StepConfig,
    half_x_stencils: Vec<TranslationStencil>,
    limiter: Option<CellPositivity>,
    limiter_stats: LimiterStats,
}

impl Integrator {
    pub fn new(grid: Arc<PhaseSpaceGrid>, cfg: StepConfig) -> Result<Self> {
        cfg.validate(&grid)?;
        let half_x_stencils = match cfg.backend {
            Backend::Sldg => x_stencils(&grid, 0.5 * cfg.tau)?,
            Backend::Spline => Vec::new(),
        };
        let limiter = (cfg.limiter_enabled && cfg.backend == Backend::Sldg)
            .then(|| CellPositivity::new(grid.basis()));
        Ok(Self {
            grid,
            cfg,
            half_x_stencils,
            limiter,
            limiter_stats: LimiterStats::default(),
        })
    }

    pub fn config(&self) -> &StepConfig {
        &self.cfg
    }

    pub fn grid(&self) -> &Arc<PhaseSpaceGrid> {
        &self.grid
    }

    /// Cumulative limiter interventions since construction.
    pub fn limiter_stats(&self) -> LimiterStats {
        self.limiter_stats
    }

    /// Field of `f`, or zero when the run is not self-consistent.
    pub fn field_of(&self, f: &DistributionFunction) -> Result<FieldState> {
        if self.cfg.self_consistent {
            solve_poisson(&compute_density(f), self.grid.x(), self.grid.basis())
        } else {
            Ok(FieldState::zero(self.grid.x().n_cells(), self.grid.basis()))
        }
    }

    fn half_x(&mut self, f: &DistributionFunction) -> Result<DistributionFunction> {
        match self.cfg.backend {
            Backend::Sldg => {
                let (out, stats) = sldg_x_sweep(f, &self.half_x_stencils, self.limiter.as_ref());
                self.limiter_stats = self.limiter_stats.merge(stats);
                Ok(out)
            }
            Backend::Spline => spline_x_sweep(f, 0.5 * self.cfg.tau),
        }
    }

    /// Advances `f` by one step; returns the new state and the mid-step field.
    pub fn step(&mut self, f: &DistributionFunction) -> Result<(DistributionFunction, FieldState)> {
        let half = self.half_x(f)?;
        let field = self.field_of(&half)?;
        let kicked = match self.cfg.backend {
            Backend::Sldg => {
                let (out, stats) =
                    sldg_v_sweep(&half, &field.e_nodal, self.cfg.tau, self.limiter.as_ref())?;
                self.limiter_stats = self.limiter_stats.merge(stats);
                out
            }
            Backend::Spline => spline_v_sweep(&half, &field.e_nodal, self.cfg.tau)?,
        };
        let out = self.half_x(&kicked)?;
        Ok((out, field))
    }
}

/// One Strang step without stencil caching.
pub fn strang_step(
    f: &DistributionFunction,
    cfg: &StepConfig,
) -> Result<(DistributionFunction, FieldState)> {
    Integrator::new(f.shared_grid().clone(), *cfg)?.step(f)
}

/// Output of [`run`].
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<InvariantRecord>,
    pub final_state: DistributionFunction,
    /// `(time, state)` for each requested snapshot time, in request order.
    pub snapshots: Vec<(f64, DistributionFunction)>,
    pub steps: usize,
    pub limiter_stats: LimiterStats,
}

/// Number of steps of size `tau` needed to reach `duration`.
pub fn steps_for(duration: f64, tau: f64) -> usize {
    let ratio = duration / tau;
    let rounded = ratio.round();
    if (ratio - rounded).abs() <= 1e-9 * ratio.max(1.0) {
        rounded as usize
    } else {
        ratio.ceil() as usize
    }
}

/// Steps `initial` to `t_end`, recording invariants every `diag_interval`
/// (and at the final step) and keeping a copy of f at each snapshot time.
///
/// Invariants at a record time use the field solved from the recorded f.
pub fn run(
    initial: DistributionFunction,
    cfg: &StepConfig,
    t_end: f64,
    diag_interval: f64,
    snapshot_times: &[f64],
) -> Result<RunOutput> {
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::invalid(format!(
            "final time {t_end} must be positive"
        )));
    }
    let tau = cfg.tau;
    let diag_every = steps_for(diag_interval, tau);
    if diag_every == 0
        || ((diag_every as f64) * tau - diag_interval).abs() > 1e-9 * diag_interval.max(tau)
    {
        return Err(Error::invalid(format!(
            "diagnostic interval {diag_interval} is not a positive multiple of tau = {tau}"
        )));
    }
    let n_steps = steps_for(t_end, tau);
    let mut integrator = Integrator::new(initial.shared_grid().clone(), *cfg)?;
    let snapshot_steps: Vec<usize> = snapshot_times
        .iter()
        .map(|&s| ((s / tau).round().max(0.0) as usize).min(n_steps))
        .collect();
    let mut snapshots: Vec<Option<(f64, DistributionFunction)>> = vec![None; snapshot_times.len()];
    let mut take_snapshots = |step: usize, f: &DistributionFunction| {
        for (slot, &s) in snapshots.iter_mut().zip(&snapshot_steps) {
            if s == step {
                *slot = Some((step as f64 * tau, f.clone()));
            }
        }
    };

    let mut f = initial;
    let mut records = vec![compute_invariants(&f, &integrator.field_of(&f)?, 0.0)];
    take_snapshots(0, &f);
    for step in 1..=n_steps {
        let (next, _) = integrator.step(&f)?;
        f = next;
        let t = step as f64 * tau;
        if !f.is_finite() {
            return Err(Error::BlowUp { step, t });
        }
        if step % diag_every == 0 || step == n_steps {
            records.push(compute_invariants(&f, &integrator.field_of(&f)?, t));
        }
        take_snapshots(step, &f);
    }
    Ok(RunOutput {
        records,
        final_state: f,
        snapshots: snapshots.into_iter().flatten().collect(),
        steps: n_steps,
        limiter_stats: integrator.limiter_stats(),
    })
}
