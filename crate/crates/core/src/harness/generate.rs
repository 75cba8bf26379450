//! Seeded random interaction matrices and initial conditions.
//!
//! The generator is ChaCha8 seeded with `seed_from_u64`. Matrices draw from
//! stream 0 and initial conditions from stream 1, so one seed can drive both
//! without correlating them. Reals come from rand's 53-bit `Standard` f64
//! mapped to `(0, 1]`. Off-diagonal entries are drawn in row-major order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{InteractionMatrix, SimplexVector};

pub const SINKHORN_TOL: f64 = 1e-12;
pub const SINKHORN_MAX_SWEEPS: usize = 100_000;

const MATRIX_STREAM: u64 = 0;
const SIMPLEX_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    RowStochastic,
    DoublyStochastic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomMatrixSpec {
    pub n: usize,
    pub kind: MatrixKind,
    pub seed: u64,
    #[serde(default = "default_sinkhorn_tol")]
    pub sinkhorn_tol: f64,
}

fn default_sinkhorn_tol() -> f64 {
    SINKHORN_TOL
}

impl RandomMatrixSpec {
    pub fn row_stochastic(n: usize, seed: u64) -> Self {
        RandomMatrixSpec {
            n,
            kind: MatrixKind::RowStochastic,
            seed,
            sinkhorn_tol: SINKHORN_TOL,
        }
    }

    pub fn doubly_stochastic(n: usize, seed: u64) -> Self {
        RandomMatrixSpec {
            kind: MatrixKind::DoublyStochastic,
            ..Self::row_stochastic(n, seed)
        }
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform draw on `(0, 1]`.
pub(crate) fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// Random interaction matrix on the complete graph without self-loops.
pub fn generate_matrix(spec: &RandomMatrixSpec) -> Result<InteractionMatrix> {
    let n = spec.n;
    match spec.kind {
        MatrixKind::RowStochastic if n < 2 => return Err(Error::TooSmall { n }),
        MatrixKind::DoublyStochastic if n < 3 => {
            return Err(Error::InvalidArgument(
                "doubly stochastic generation needs n >= 3".into(),
            ))
        }
        _ => {}
    }
    if spec.kind == MatrixKind::DoublyStochastic && !(spec.sinkhorn_tol > 0.0) {
        return Err(Error::InvalidArgument(
            "sinkhorn_tol must be positive".into(),
        ));
    }

    let mut rng = stream_rng(spec.seed, MATRIX_STREAM);
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                a[i * n + j] = open_unit(&mut rng);
            }
        }
    }

    match spec.kind {
        MatrixKind::RowStochastic => normalize_rows(&mut a, n),
        MatrixKind::DoublyStochastic => sinkhorn(&mut a, n, spec.sinkhorn_tol)?,
    }
    InteractionMatrix::from_row_major(n, a)
}

fn normalize_rows(a: &mut [f64], n: usize) {
    for row in a.chunks_mut(n) {
        let s: f64 = row.iter().sum();
        row.iter_mut().for_each(|v| *v /= s);
    }
}

fn worst_column_error(a: &[f64], n: usize) -> f64 {
    (0..n)
        .map(|j| ((0..n).map(|i| a[i * n + j]).sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Alternating row/column scaling. Zero entries (the diagonal) stay zero.
/// Ends on a row normalization so row sums are exact to rounding.
fn sinkhorn(a: &mut [f64], n: usize, tol: f64) -> Result<()> {
    let mut worst = f64::INFINITY;
    for _ in 0..SINKHORN_MAX_SWEEPS {
        normalize_rows(a, n);
        worst = worst_column_error(a, n);
        if worst <= tol {
            return Ok(());
        }
        for j in 0..n {
            let s: f64 = (0..n).map(|i| a[i * n + j]).sum();
            for i in 0..n {
                a[i * n + j] /= s;
            }
        }
    }
    Err(Error::SinkhornNoConvergence {
        sweeps: SINKHORN_MAX_SWEEPS,
        worst_column_error: worst,
    })
}

/// Point on the simplex from normalized exponential draws (uniform on the
/// simplex).
pub fn random_simplex(n: usize, seed: u64) -> Result<SimplexVector> {
    if n < 2 {
        return Err(Error::TooSmall { n });
    }
    let mut rng = stream_rng(seed, SIMPLEX_STREAM);
    Ok(random_simplex_from(&mut rng, n))
}

/// Same construction on a caller-supplied generator.
pub fn random_simplex_from<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SimplexVector {
    let draws: Vec<f64> = (0..n).map(|_| -open_unit(rng).ln()).collect();
    let total: f64 = draws.iter().sum();
    SimplexVector::from_trusted(draws.into_iter().map(|d| d / total).collect())
}
