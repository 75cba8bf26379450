use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::{check_dims, InteractionMatrix, SimplexVector};
use crate::trajectory::Trajectory;

/// Slack for the per-issue min/max/Lyapunov monotonicity verdicts.
pub const MONOTONE_SLACK: f64 = 1e-12;
/// Margin by which `V` must drop across an `(n-1)`-issue window.
pub const STRICT_MARGIN: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub converged: bool,
    #[serde(serialize_with = "crate::json::reals")]
    pub limit: SimplexVector,
    pub issues_used: usize,
    #[serde(
        serialize_with = "crate::json::real",
        deserialize_with = "crate::json::real_or_inf"
    )]
    pub final_residual: f64,
    pub min_monotone: bool,
    pub max_monotone: bool,
    pub lyapunov_nonincreasing: bool,
    pub n2_warning: bool,
}

impl ConvergenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `V(x) = max_i x_i - 1/n`.
pub fn lyapunov_value(x: &SimplexVector) -> f64 {
    x.max() - 1.0 / x.n() as f64
}

/// Verdicts for a recorded trajectory.
///
/// `lyapunov_nonincreasing` is only meaningful when `c` is doubly
/// stochastic and is reported `false` otherwise.
pub fn analyze_trajectory(traj: &Trajectory, c: &InteractionMatrix) -> Result<ConvergenceReport> {
    check_dims(c.n(), traj.n())?;
    let diag = traj.diagnostics();
    let pairs = || diag.iter().zip(diag.iter().skip(1));
    let min_monotone = pairs().all(|(a, b)| b.min >= a.min - MONOTONE_SLACK);
    let max_monotone = pairs().all(|(a, b)| b.max <= a.max + MONOTONE_SLACK);
    let lyapunov_nonincreasing = c.is_doubly_stochastic()
        && traj
            .states()
            .windows(2)
            .all(|w| lyapunov_value(&w[1]) <= lyapunov_value(&w[0]) + MONOTONE_SLACK);

    Ok(ConvergenceReport {
        converged: traj.converged(),
        limit: traj.last().clone(),
        issues_used: traj.issues(),
        final_residual: traj.final_step(),
        min_monotone,
        max_monotone,
        lyapunov_nonincreasing,
        n2_warning: traj.n() == 2,
    })
}

/// First issue `s` at which `V` fails to drop by more than `margin` over
/// the window `[s, s + window]`.
///
/// Only windows that start at a strictly positive state farther than
/// `distance_floor` from `1/n` are checked, since the decrease is only
/// guaranteed there.
pub fn first_window_violation(
    traj: &Trajectory,
    window: usize,
    distance_floor: f64,
    margin: f64,
) -> Option<usize> {
    let states = traj.states();
    let n = traj.n();
    let centre = SimplexVector::uniform(n);
    (0..states.len().saturating_sub(window)).find(|&s| {
        let x = &states[s];
        let eligible = traj.diagnostics()[s].zeros == 0
            && x.min() > 0.0
            && x.linf_distance(&centre) > distance_floor;
        eligible && lyapunov_value(&states[s + window]) >= lyapunov_value(x) - margin
    })
}
