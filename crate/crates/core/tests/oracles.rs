mod common;

use common::*;
use degroot_friedkin::analysis::{brute_force_fixed_points, EquilibriumKind};
use degroot_friedkin::dynamics::{
    build_influence, dominant_left_eigenvector, finite_t_step, modified_step, original_df_step,
    EIGEN_MAX_ITER, EIGEN_TOL,
};
use degroot_friedkin::harness::{generate_matrix, RandomMatrixSpec};
use degroot_friedkin::{validate_interaction, validate_simplex, SimplexVector};
use rand::Rng;

#[test]
fn eigenvector_matches_linear_solve() {
    let mut rng = rng(11);
    for k in 0..200 {
        let n = rng.gen_range(2..=8);
        let c = if n == 2 {
            validate_interaction(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
        } else {
            random_matrix(&mut rng, n, k % 2 == 0)
        };
        let x = random_interior(&mut rng, n);
        let w = build_influence(&x, &c).unwrap();
        let u = dominant_left_eigenvector(&w, EIGEN_TOL, EIGEN_MAX_ITER).unwrap();
        let oracle = stationary_by_solve(&w);
        assert!(
            linf(u.as_slice(), &oracle) <= 1e-10,
            "case {k}: {u:?} vs {oracle:?}"
        );
    }
}

#[test]
fn original_step_on_three_cycle() {
    // For the cycle 1->2->3->1 the stationary condition u_j (1 - x_j) = u_{j-1} (1 - x_{j-1})
    // gives u_i proportional to 1 / (1 - x_i).
    let c = validate_interaction(&[
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![1.0, 0.0, 0.0],
    ])
    .unwrap();
    let x = validate_simplex(&[0.5, 0.3, 0.2]).unwrap();
    let raw: Vec<f64> = x.as_slice().iter().map(|v| 1.0 / (1.0 - v)).collect();
    let total: f64 = raw.iter().sum();
    let expected: Vec<f64> = raw.iter().map(|v| v / total).collect();
    let got = original_df_step(&x, &c).unwrap();
    assert!(linf(got.as_slice(), &expected) <= 1e-12);
}

#[test]
fn modified_step_matches_matrix_form() {
    let mut rng = rng(12);
    for _ in 0..100 {
        let n = rng.gen_range(3..=8);
        let c = random_matrix(&mut rng, n, false);
        let x = random_interior(&mut rng, n);
        let w = build_influence(&x, &c).unwrap();
        let expected: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| w.get(j, i) * x[j]).sum())
            .collect();
        let got = modified_step(&x, &c).unwrap();
        assert!(linf(got.as_slice(), &expected) <= 1e-15);
    }
}

#[test]
fn long_finite_t_approaches_original() {
    let mut rng = rng(13);
    for _ in 0..10 {
        let n = rng.gen_range(3..=6);
        let c = random_matrix(&mut rng, n, false);
        let x = random_interior(&mut rng, n);
        let exact = original_df_step(&x, &c).unwrap();
        let far = finite_t_step(&x, &c, 10_000).unwrap();
        let near = finite_t_step(&x, &c, 2).unwrap();
        assert!(far.linf_distance(&exact) <= 1e-6);
        assert!(far.linf_distance(&exact) <= near.linf_distance(&exact));
    }
}

#[test]
fn brute_force_on_generated_doubly_stochastic() {
    for seed in 0..3 {
        let c = generate_matrix(&RandomMatrixSpec::doubly_stochastic(3, seed)).unwrap();
        let found = brute_force_fixed_points(&c, 0.02, 1e-10).unwrap();
        let mut kinds: Vec<_> = found.iter().map(|f| f.kind.clone()).collect();
        kinds.sort_by_key(|k| format!("{k:?}"));
        assert_eq!(
            kinds,
            vec![
                EquilibriumKind::Uniform,
                EquilibriumKind::Vertex(0),
                EquilibriumKind::Vertex(1),
                EquilibriumKind::Vertex(2)
            ]
        );
        let u = found
            .iter()
            .find(|f| f.kind == EquilibriumKind::Uniform)
            .unwrap();
        assert!(u.x.linf_distance(&SimplexVector::uniform(3)) <= 1e-9);
    }
}

#[test]
fn brute_force_reports_weighted_interior_point() {
    // Not doubly stochastic: the interior fixed point is reported, not matched
    // against the uniform state.
    let c = validate_interaction(&[
        vec![0.0, 0.7, 0.3],
        vec![0.2, 0.0, 0.8],
        vec![0.5, 0.5, 0.0],
    ])
    .unwrap();
    let found = brute_force_fixed_points(&c, 0.02, 1e-10).unwrap();
    let interior: Vec<_> = found
        .iter()
        .filter(|f| f.kind == EquilibriumKind::Interior)
        .collect();
    assert_eq!(found.len(), 4);
    assert_eq!(interior.len(), 1);
    let x = &interior[0].x;
    let next = modified_step(x, &c).unwrap();
    assert!(next.linf_distance(x) <= 1e-10);
    assert!(x.linf_distance(&SimplexVector::uniform(3)) > 1e-3);
}

#[test]
fn brute_force_four_nodes_finds_vertices_and_centre() {
    let mut rng = rng(14);
    for c in [
        generate_matrix(&RandomMatrixSpec::doubly_stochastic(4, 21)).unwrap(),
        sparse_doubly_stochastic(&mut rng, 4),
    ] {
        let found = brute_force_fixed_points(&c, 0.05, 1e-10).unwrap();
        assert_eq!(found.len(), 5, "{found:?}");
        let vertices = found
            .iter()
            .filter(|f| matches!(f.kind, EquilibriumKind::Vertex(_)))
            .count();
        assert_eq!(vertices, 4);
        assert!(found.iter().any(|f| f.kind == EquilibriumKind::Uniform));
    }
}
