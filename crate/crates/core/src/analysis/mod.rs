//! Equilibria, monotonicity verdicts and brute-force oracles for the
//! Modified map.

mod brute_force;
mod equilibria;
mod report;

pub use brute_force::{
    brute_force_fixed_points, brute_force_fixed_points_with, grid_point_count, BruteForceOptions,
};
pub use equilibria::{
    check_t_matrix_irreducible, max_admissible_a, mixed_root_sum_check, n2_equilibrium_family,
    quadratic_roots, verify_equilibrium, EquilibriumCandidate, EquilibriumKind, Root,
};
pub use report::{
    analyze_trajectory, first_window_violation, lyapunov_value, ConvergenceReport, MONOTONE_SLACK,
    STRICT_MARGIN,
};

/// Serializes candidates as a JSON array in lexicographic order of `x`.
pub fn candidates_to_json(candidates: &[EquilibriumCandidate]) -> String {
    let mut sorted: Vec<&EquilibriumCandidate> = candidates.iter().collect();
    sorted.sort_by(|a, b| brute_force::lexicographic(a.x.as_slice(), b.x.as_slice()));
    serde_json::to_string_pretty(&sorted).expect("candidates serialize")
}
