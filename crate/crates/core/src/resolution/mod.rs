//! Ext over the finite quotient Hopf algebras, by minimal resolution and by
//! the cobar complex.
//!
//! Charts are indexed by `(s, f, w)` with `s = t - f` for internal stem `t`.
//! Both computations are bounded by internal stem.

mod chart;
mod checkpoint;
mod cobar;
mod ground;
mod minimal;

pub use chart::{ext_chart, first_difference, ChartSummand, ExtChart};
pub use checkpoint::{read_checkpoint, write_checkpoint};
pub use cobar::{cobar_ext, cobar_square_zero, DEFAULT_COBAR_CAP};
pub use ground::GroundAlgebra;
pub use minimal::{minimal_resolution, ModuleElement, Resolution, StepRecord};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0} is not a finite quotient Hopf algebra")]
    Unsupported(String),
    #[error("cobar complex at internal stem {stem}, filtration {f} has {size} cells, over the cap of {cap}")]
    CobarTooLarge { stem: i32, f: u32, size: usize, cap: usize },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}
