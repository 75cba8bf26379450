#![allow(dead_code)]

use degroot_friedkin::harness::{generate_matrix, random_simplex_from, RandomMatrixSpec};
use degroot_friedkin::{
    validate_interaction, validate_simplex, InfluenceMatrix, InteractionMatrix, SimplexVector,
};
use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random derangement of `0..n`.
fn derangement<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    loop {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        if p.iter().enumerate().all(|(i, &j)| i != j) {
            return p;
        }
    }
}

/// Convex combination of the cyclic shift and a few random derangements:
/// doubly stochastic, zero diagonal, irreducible, usually sparse.
pub fn sparse_doubly_stochastic<R: Rng>(rng: &mut R, n: usize) -> InteractionMatrix {
    let extra = rng.gen_range(0..=3);
    let mut perms = vec![(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>()];
    for _ in 0..extra {
        perms.push(derangement(rng, n));
    }
    let weights: Vec<f64> = perms.iter().map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut raw = vec![vec![0.0; n]; n];
    for (p, w) in perms.iter().zip(&weights) {
        for (i, &j) in p.iter().enumerate() {
            raw[i][j] += w / total;
        }
    }
    validate_interaction(&raw).expect("Birkhoff mixture is valid")
}

/// Ring backbone plus random chords, row-normalized. Weights are drawn from
/// `[0.1, 1)` before normalization.
pub fn sparse_row_stochastic<R: Rng>(rng: &mut R, n: usize) -> InteractionMatrix {
    let mut raw = vec![vec![0.0; n]; n];
    for (i, row) in raw.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if j == (i + 1) % n || (i != j && rng.gen_bool(0.3)) {
                *v = rng.gen_range(0.1..1.0);
            }
        }
        let s: f64 = row.iter().sum();
        row.iter_mut().for_each(|v| *v /= s);
    }
    validate_interaction(&raw).expect("ring-backed matrix is valid")
}

/// Alternates between dense (generated) and sparse matrices.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, doubly: bool) -> InteractionMatrix {
    let dense = rng.gen_bool(0.5);
    match (doubly, dense) {
        (true, true) => generate_matrix(&RandomMatrixSpec {
            sinkhorn_tol: 1e-15,
            ..RandomMatrixSpec::doubly_stochastic(n, rng.gen())
        })
        .expect("sinkhorn converges"),
        (true, false) => sparse_doubly_stochastic(rng, n),
        (false, true) => generate_matrix(&RandomMatrixSpec::row_stochastic(n, rng.gen())).unwrap(),
        (false, false) => sparse_row_stochastic(rng, n),
    }
}

pub fn random_interior<R: Rng>(rng: &mut R, n: usize) -> SimplexVector {
    random_simplex_from(rng, n)
}

/// A simplex point with exactly `zeros` zero entries (`zeros <= n - 2`, so
/// never a vertex).
pub fn simplex_with_zeros<R: Rng>(rng: &mut R, n: usize, zeros: usize) -> SimplexVector {
    assert!(zeros + 2 <= n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    for &i in &idx[..zeros] {
        v[i] = 0.0;
    }
    let s: f64 = v.iter().sum();
    validate_simplex(&v.iter().map(|x| x / s).collect::<Vec<_>>()).unwrap()
}

/// Stationary distribution by a dense linear solve: `(W' - I) u = 0` with
/// the last equation replaced by `sum u = 1`.
pub fn stationary_by_solve(w: &InfluenceMatrix) -> Vec<f64> {
    let n = w.n();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = w.get(j, i) - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(n);
    b[n - 1] = 1.0;
    let u = a.lu().solve(&b).expect("nonsingular");
    u.iter().copied().collect()
}

pub fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
