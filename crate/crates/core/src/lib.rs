//! Computations with the 2-complete C-motivic dual Steenrod algebra.
//!
//! The crate covers normal-form arithmetic in the presented algebras, the
//! coproduct and its dual product, quotient-module dimension ladders, minimal
//! resolutions and cobar complexes over finite quotient Hopf algebras, and the
//! weight truncation that turns classical Adams–Novikov charts into
//! tri-graded motivic ones.

pub mod algebra;
pub mod anss;
pub mod dual;
pub mod f2;
pub mod hopf;
pub mod quotient;
pub mod resolution;
pub mod svg;
pub mod tau_module;
