//! Exhaustive search for fixed points of the Modified map on a simplex grid.
//!
//! Independent of any closed form: every grid point is pushed through the
//! damped iteration `x <- (1 - beta) x + beta f(x)` and whatever settles is
//! reported.

use rayon::prelude::*;

use super::equilibria::{verify_equilibrium, EquilibriumCandidate};
use crate::dynamics::modified_step;
use crate::error::{Error, Result};
use crate::matrix::{InteractionMatrix, SimplexVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceOptions {
    pub grid_step: f64,
    pub residual_tol: f64,
    /// Damping weight on the mapped point.
    pub damping: f64,
    pub max_refine_iter: usize,
    /// Largest admissible number of grid points.
    pub max_points: u128,
}

impl BruteForceOptions {
    pub fn new(grid_step: f64, residual_tol: f64) -> Self {
        BruteForceOptions {
            grid_step,
            residual_tol,
            damping: 0.5,
            max_refine_iter: 200_000,
            max_points: 2_000_000,
        }
    }
}

/// Number of points `k / m` with nonnegative integer `k` summing to `m` in
/// dimension `n`, i.e. `binom(m + n - 1, n - 1)`.
pub fn grid_point_count(m: u64, n: usize) -> u128 {
    let mut count: u128 = 1;
    for i in 1..n as u128 {
        count = count.saturating_mul(m as u128 + i) / i;
    }
    count
}

fn compositions(m: u64, n: usize) -> Vec<Vec<u64>> {
    fn rec(remaining: u64, slots: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=remaining {
            prefix.push(k);
            rec(remaining - k, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::with_capacity(n), &mut out);
    out
}

fn refine(
    mut x: SimplexVector,
    c: &InteractionMatrix,
    opts: &BruteForceOptions,
) -> Result<(SimplexVector, f64)> {
    let target = opts.residual_tol / 10.0;
    let beta = opts.damping;
    let mut residual = verify_equilibrium(&x, c)?;
    for _ in 0..opts.max_refine_iter {
        if residual <= target {
            break;
        }
        let fx = modified_step(&x, c)?;
        let next = x
            .as_slice()
            .iter()
            .zip(fx.as_slice())
            .map(|(a, b)| (1.0 - beta) * a + beta * b)
            .collect();
        x = SimplexVector::from_trusted(next);
        residual = verify_equilibrium(&x, c)?;
    }
    Ok((x, residual))
}

/// All fixed points reachable from a regular simplex grid.
///
/// Candidates closer than `grid_step / 2` (sup norm) are merged, keeping the
/// one with the smaller residual; the result is sorted lexicographically.
pub fn brute_force_fixed_points(
    c: &InteractionMatrix,
    grid_step: f64,
    residual_tol: f64,
) -> Result<Vec<EquilibriumCandidate>> {
    brute_force_fixed_points_with(c, &BruteForceOptions::new(grid_step, residual_tol))
}

pub fn brute_force_fixed_points_with(
    c: &InteractionMatrix,
    opts: &BruteForceOptions,
) -> Result<Vec<EquilibriumCandidate>> {
    let step = opts.grid_step;
    if !(step > 0.0 && step <= 0.1) {
        return Err(Error::InvalidArgument(format!(
            "grid step must lie in (0, 0.1], got {step}"
        )));
    }
    let m = (1.0 / step).round();
    if (m * step - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "grid step {step} does not divide 1"
        )));
    }
    if !(opts.residual_tol > 0.0) || !(opts.damping > 0.0 && opts.damping <= 1.0) {
        return Err(Error::InvalidArgument(
            "residual tolerance must be positive and damping in (0, 1]".into(),
        ));
    }
    let m = m as u64;
    let n = c.n();
    let points = grid_point_count(m, n);
    if points > opts.max_points {
        return Err(Error::GridTooLarge {
            points,
            cap: opts.max_points,
        });
    }

    let grid = compositions(m, n);
    let refined: Vec<(SimplexVector, f64)> = grid
        .par_iter()
        .map(|k| {
            let x = SimplexVector::from_trusted(k.iter().map(|&ki| ki as f64 / m as f64).collect());
            refine(x, c, opts)
        })
        .collect::<Result<_>>()?;

    let mut settled: Vec<(SimplexVector, f64)> = refined
        .into_iter()
        .filter(|(_, r)| *r <= opts.residual_tol)
        .collect();
    // stable: ties keep grid order
    settled.sort_by(|a, b| a.1.total_cmp(&b.1));

    let radius = step / 2.0;
    let mut kept: Vec<SimplexVector> = Vec::new();
    for (x, _) in settled {
        if kept.iter().all(|k| k.linf_distance(&x) >= radius) {
            kept.push(x);
        }
    }
    kept.sort_by(|a, b| lexicographic(a.as_slice(), b.as_slice()));
    kept.into_iter()
        .map(|x| EquilibriumCandidate::classify(x, c))
        .collect()
}

pub(crate) fn lexicographic(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::EquilibriumKind;
    use crate::matrix::validate_interaction;

    #[test]
    fn grid_counts() {
        assert_eq!(grid_point_count(50, 3), 1326);
        assert_eq!(grid_point_count(100, 2), 101);
        assert_eq!(grid_point_count(10, 4), 286);
        assert_eq!(compositions(50, 3).len(), 1326);
        assert_eq!(compositions(10, 4).len(), 286);
        assert!(compositions(7, 3)
            .iter()
            .all(|k| k.iter().sum::<u64>() == 7));
    }

    #[test]
    fn three_ring_has_vertices_and_barycenter() {
        let c = validate_interaction(&[
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        let found = brute_force_fixed_points(&c, 0.02, 1e-10).unwrap();
        let kinds: Vec<_> = found.iter().map(|c| c.kind.clone()).collect();
        assert_eq!(found.len(), 4, "{found:?}");
        assert!(kinds.contains(&EquilibriumKind::Uniform));
        for i in 0..3 {
            assert!(kinds.contains(&EquilibriumKind::Vertex(i)));
        }
    }

    #[test]
    fn two_node_family_is_all_fixed() {
        let c = validate_interaction(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let found = brute_force_fixed_points(&c, 0.01, 1e-10).unwrap();
        assert_eq!(found.len(), 101);
        for (k, cand) in found.iter().enumerate() {
            assert!((cand.x[0] - k as f64 / 100.0).abs() < 1e-12);
            assert!(cand.residual <= 1e-10);
        }
    }

    #[test]
    fn bad_grid_rejected() {
        let c = validate_interaction(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(brute_force_fixed_points(&c, 0.3, 1e-10).is_err());
        assert!(brute_force_fixed_points(&c, 0.03, 1e-10).is_err());
        assert!(brute_force_fixed_points(&c, 0.0, 1e-10).is_err());
        let c6 = validate_interaction(
            &(0..6)
                .map(|i| (0..6).map(|j| if i == j { 0.0 } else { 0.2 }).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(matches!(
            brute_force_fixed_points(&c6, 0.001, 1e-10),
            Err(Error::GridTooLarge { .. })
        ));
    }
}
