//! Catalog of initial conditions.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mesh_basis::{DistributionFunction, PhaseSpaceGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    LandauWeak,
    TwoStream,
    FreeStreaming,
    Uniform,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 4] = [
        ScenarioKind::LandauWeak,
        ScenarioKind::TwoStream,
        ScenarioKind::FreeStreaming,
        ScenarioKind::Uniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::LandauWeak => "landau_weak",
            ScenarioKind::TwoStream => "two_stream",
            ScenarioKind::FreeStreaming => "free_streaming",
            ScenarioKind::Uniform => "uniform",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::UnknownScenario(name.to_string()))
    }

    /// Default `(alpha, k_x, beam_velocity, v_max)`.
    pub fn defaults(self) -> ScenarioParams {
        match self {
            ScenarioKind::TwoStream => ScenarioParams {
                alpha: Some(1e-3),
                k_x: Some(0.2),
                beam_velocity: Some(2.4),
                v_max: Some(8.0),
            },
            ScenarioKind::LandauWeak | ScenarioKind::FreeStreaming => ScenarioParams {
                alpha: Some(0.01),
                k_x: Some(0.5),
                beam_velocity: Some(0.0),
                v_max: Some(6.0),
            },
            ScenarioKind::Uniform => ScenarioParams {
                alpha: Some(0.0),
                k_x: Some(0.5),
                beam_velocity: Some(0.0),
                v_max: Some(6.0),
            },
        }
    }
}

/// Optional overrides of the scenario defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ScenarioParams {
    pub alpha: Option<f64>,
    pub k_x: Option<f64>,
    pub beam_velocity: Option<f64>,
    pub v_max: Option<f64>,
}

impl ScenarioParams {
    fn or(self, fallback: ScenarioParams) -> ScenarioParams {
        ScenarioParams {
            alpha: self.alpha.or(fallback.alpha),
            k_x: self.k_x.or(fallback.k_x),
            beam_velocity: self.beam_velocity.or(fallback.beam_velocity),
            v_max: self.v_max.or(fallback.v_max),
        }
    }
}

pub type InitialCondition = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Initial condition plus its domain.
#[derive(Clone)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub f0: InitialCondition,
    pub domain_length: f64,
    pub v_max: f64,
    pub alpha: f64,
    pub k_x: f64,
    pub beam_velocity: f64,
    /// Whether the electric field is solved self-consistently.
    pub self_consistent: bool,
    pub description: String,
}

impl std::fmt::Debug for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Scenario")
            .field("kind", &self.kind)
            .field("domain_length", &self.domain_length)
            .field("v_max", &self.v_max)
            .field("alpha", &self.alpha)
            .field("k_x", &self.k_x)
            .field("beam_velocity", &self.beam_velocity)
            .finish()
    }
}

pub fn maxwellian(v: f64) -> f64 {
    (-0.5 * v * v).exp() / (2.0 * PI).sqrt()
}

pub fn make_scenario(kind: ScenarioKind, params: ScenarioParams) -> Result<Scenario> {
    let p = params.or(kind.defaults());
    let (alpha, k_x, vb, v_max) = (
        p.alpha.unwrap_or(0.0),
        p.k_x.unwrap_or(0.5),
        p.beam_velocity.unwrap_or(0.0),
        p.v_max.unwrap_or(6.0),
    );
    if !(k_x.is_finite() && k_x > 0.0) {
        return Err(Error::invalid(format!(
            "wave number {k_x} must be positive"
        )));
    }
    if !(v_max.is_finite() && v_max > 0.0) {
        return Err(Error::invalid(format!("v_max {v_max} must be positive")));
    }
    if !(alpha.is_finite() && alpha.abs() < 1.0) {
        return Err(Error::invalid(format!(
            "perturbation amplitude {alpha} must lie in (-1, 1)"
        )));
    }
    let domain_length = 2.0 * PI / k_x;
    let (f0, description, self_consistent): (InitialCondition, String, bool) = match kind {
        ScenarioKind::TwoStream => (
            Arc::new(move |x, v| {
                0.5 * (maxwellian(v - vb) + maxwellian(v + vb)) * (1.0 + alpha * (k_x * x).cos())
            }),
            format!("two-stream instability, beams at +-{vb}, alpha = {alpha}, k = {k_x}"),
            true,
        ),
        ScenarioKind::LandauWeak => (
            Arc::new(move |x, v| maxwellian(v) * (1.0 + alpha * (k_x * x).cos())),
            format!("weak Landau damping, alpha = {alpha}, k = {k_x}"),
            true,
        ),
        ScenarioKind::FreeStreaming => (
            Arc::new(move |x, v| maxwellian(v) * (1.0 + alpha * (k_x * x).cos())),
            format!("free streaming of the Landau profile (no field), alpha = {alpha}, k = {k_x}"),
            false,
        ),
        ScenarioKind::Uniform => (
            Arc::new(|_, v| maxwellian(v)),
            "spatially uniform Maxwellian".to_string(),
            true,
        ),
    };
    Ok(Scenario {
        kind,
        f0,
        domain_length,
        v_max,
        alpha,
        k_x,
        beam_velocity: vb,
        self_consistent,
        description,
    })
}

impl Scenario {
    /// Phase-space grid with `n_cells` cells per dimension and degree `k`.
    pub fn grid(&self, n_cells: usize, degree: usize) -> Result<Arc<PhaseSpaceGrid>> {
        Ok(Arc::new(PhaseSpaceGrid::uniform(
            n_cells,
            self.domain_length,
            n_cells,
            self.v_max,
            degree,
        )?))
    }

    /// Samples `f0` and rescales so the discrete mean density is exactly one.
    pub fn initial_distribution(&self, grid: Arc<PhaseSpaceGrid>) -> Result<DistributionFunction> {
        let f0 = self.f0.clone();
        let mut f = DistributionFunction::sample(grid, move |x, v| f0(x, v))?;
        let g = f.grid();
        let w = g.basis().weights();
        let p = g.n_nodes();
        let jac = 0.25 * g.x().cell_width() * g.v().cell_width();
        let mut mass = 0.0;
        for block in f.values().chunks_exact(p * p) {
            for a in 0..p {
                for b in 0..p {
                    mass += jac * w[a] * w[b] * block[a * p + b];
                }
            }
        }
        let length = g.x().length();
        if mass > 0.0 {
            f.scale(length / mass);
        }
        Ok(f)
    }
}
