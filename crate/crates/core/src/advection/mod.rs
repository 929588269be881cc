//! One-dimensional translation kernels for `du/dt = a du/dxi` on periodic lines.

mod limiter;
mod sldg;
mod spline;

pub use limiter::{limit_positivity, limit_positivity_in_place, CellPositivity, LimiterOutcome};
pub use sldg::{apply_sldg_translation, build_translation_stencil, TranslationStencil};
pub use spline::{
    apply_spline_translation, build_periodic_spline, solve_cyclic_tridiagonal, SplineLine,
};
