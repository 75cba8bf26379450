//! Simulation and analysis of self-appraisal dynamics on a fixed social
//! network.
//!
//! Individuals discuss a sequence of issues. On each issue they average
//! opinions with the influence matrix `W(x) = diag(x) + (I - diag(x)) C`,
//! where `x` is their self-confidence and `C` the relative interaction
//! matrix. Between issues, self-confidence is replaced by (an estimate of)
//! social power. [`dynamics`] implements the maps, [`analysis`] checks
//! their equilibria and monotonicity properties and [`harness`] provides the
//! presets, random instances, file formats and the `dfsim` command line.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod harness;
mod json;
pub mod matrix;
pub mod trajectory;

pub use dynamics::ModelKind;
pub use error::{Error, Result};
pub use matrix::{
    validate_interaction, validate_simplex, InfluenceMatrix, InteractionMatrix, OpinionVector,
    SimplexVector,
};
pub use trajectory::Trajectory;
