//! Update maps for self-confidence across a sequence of issues.
//!
//! Three families share one state space (the simplex):
//!
//! * the original reflected-appraisal map, `x(s+1) = u(x(s))`, where `u` is
//!   the dominant left eigenvector of the influence matrix `W(x(s))`;
//! * the finite-horizon distributed map, where every individual runs `T`
//!   rounds of the perceived-power iteration `p <- W' p` from `p = x(s)`;
//! * the one-step Modified map (`T = 1`),
//!   `x_i' = x_i^2 + sum_j (1 - x_j) c_ji x_j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{check_dims, InfluenceMatrix, InteractionMatrix, OpinionVector, SimplexVector};
use crate::trajectory::Trajectory;

/// Default residual tolerance for the power iteration.
pub const EIGEN_TOL: f64 = 1e-12;
/// Default iteration cap for the power iteration.
pub const EIGEN_MAX_ITER: usize = 100_000;
/// Largest tolerated `|sum x - 1|` along a simulated trajectory.
pub const DRIFT_TOL: f64 = 1e-9;
/// Default stopping tolerance on `||x(s+1) - x(s)||_inf`.
pub const STOP_TOL: f64 = 1e-10;

/// Which self-confidence map to iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Reflected appraisal on the converged social power.
    Original,
    /// `T` rounds of perceived-power updates per issue.
    FiniteT(u32),
    /// One round per issue. Same map as `FiniteT(1)`.
    Modified,
}

impl ModelKind {
    pub fn validate(self) -> Result<Self> {
        match self {
            ModelKind::FiniteT(0) => {
                Err(Error::InvalidArgument("finite-T model needs T >= 1".into()))
            }
            other => Ok(other),
        }
    }

    /// Applies one issue's update.
    pub fn step(self, x: &SimplexVector, c: &InteractionMatrix) -> Result<SimplexVector> {
        match self {
            ModelKind::Original => original_df_step(x, c),
            ModelKind::FiniteT(t) => finite_t_step(x, c, t),
            ModelKind::Modified => modified_step(x, c),
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelKind::Original => f.write_str("original"),
            ModelKind::FiniteT(t) => write!(f, "finite_t({t})"),
            ModelKind::Modified => f.write_str("modified"),
        }
    }
}

/// `W(x) = diag(x) + (I - diag(x)) C`.
pub fn build_influence(x: &SimplexVector, c: &InteractionMatrix) -> Result<InfluenceMatrix> {
    let n = c.n();
    check_dims(n, x.n())?;
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        let keep = 1.0 - x[i];
        for j in 0..n {
            entries[i * n + j] = if i == j { x[i] } else { keep * c.get(i, j) };
        }
    }
    Ok(InfluenceMatrix::from_parts(n, entries))
}

/// One round of opinion averaging, `y <- W y`.
pub fn degroot_step(w: &InfluenceMatrix, y: &OpinionVector) -> Result<OpinionVector> {
    let n = w.n();
    check_dims(n, y.n())?;
    let y = y.as_slice();
    let next = (0..n)
        .map(|i| w.row(i).iter().zip(y).map(|(a, b)| a * b).sum())
        .collect();
    Ok(OpinionVector::from_trusted(next))
}

/// `out = W' p`, accumulating the diagonal term first and then the
/// off-diagonal terms in index order.
fn transpose_apply(w: &InfluenceMatrix, p: &[f64], out: &mut [f64]) {
    let n = w.n();
    for i in 0..n {
        let mut acc = w.get(i, i) * p[i];
        for (j, &pj) in p.iter().enumerate() {
            if j != i {
                acc += w.get(j, i) * pj;
            }
        }
        out[i] = acc;
    }
}

/// Social power: the normalized left eigenvector of `W` for eigenvalue 1,
/// by power iteration on `W'`.
///
/// A row that is exactly `e_i` makes state `i` absorbing; the eigenvector is
/// then `e_i` and is returned without iterating.
pub fn dominant_left_eigenvector(
    w: &InfluenceMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<SimplexVector> {
    let n = w.n();
    let absorbing: Vec<usize> = (0..n).filter(|&i| w.get(i, i) == 1.0).collect();
    match absorbing.as_slice() {
        [] => {}
        [i] => return Ok(SimplexVector::vertex(n, *i)),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "influence matrix has {} absorbing states",
                absorbing.len()
            )))
        }
    }

    let mut u = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        transpose_apply(w, &u, &mut next);
        residual = crate::matrix::linf_distance(&u, &next);
        if residual <= tol {
            return Ok(SimplexVector::from_trusted(u));
        }
        let total: f64 = next.iter().sum();
        for (dst, src) in u.iter_mut().zip(&next) {
            *dst = src / total;
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

/// Original DeGroot-Friedkin map, `x <- u(x)`.
pub fn original_df_step(x: &SimplexVector, c: &InteractionMatrix) -> Result<SimplexVector> {
    check_dims(c.n(), x.n())?;
    if let Some(i) = x.vertex_index() {
        return Ok(SimplexVector::vertex(x.n(), i));
    }
    let w = build_influence(x, c)?;
    dominant_left_eigenvector(&w, EIGEN_TOL, EIGEN_MAX_ITER)
}

/// Perceived social power after one discussion round, `p <- W' p`.
pub fn perceived_power_step(w: &InfluenceMatrix, p: &SimplexVector) -> Result<SimplexVector> {
    check_dims(w.n(), p.n())?;
    let mut out = vec![0.0; w.n()];
    transpose_apply(w, p.as_slice(), &mut out);
    Ok(SimplexVector::from_trusted(out))
}

/// Self-confidence for the next issue after `t` perceived-power rounds, with
/// `W` frozen at `W(x)` and the rounds started from `p = x`.
pub fn finite_t_step(x: &SimplexVector, c: &InteractionMatrix, t: u32) -> Result<SimplexVector> {
    if t == 0 {
        return Err(Error::InvalidArgument("T must be at least 1".into()));
    }
    let w = build_influence(x, c)?;
    let mut p = x.as_slice().to_vec();
    let mut next = vec![0.0; p.len()];
    for _ in 0..t {
        transpose_apply(&w, &p, &mut next);
        std::mem::swap(&mut p, &mut next);
    }
    Ok(SimplexVector::from_trusted(p))
}

/// Modified DeGroot-Friedkin map, `x_i' = x_i^2 + sum_{j != i} (1 - x_j) c_ji x_j`.
///
/// Evaluated in the same operation order as one perceived-power round from
/// `p = x`, so it agrees bit for bit with `finite_t_step(x, c, 1)`.
pub fn modified_step(x: &SimplexVector, c: &InteractionMatrix) -> Result<SimplexVector> {
    let n = c.n();
    check_dims(n, x.n())?;
    let out = (0..n)
        .map(|i| {
            let mut acc = x[i] * x[i];
            for j in 0..n {
                if j != i {
                    acc += ((1.0 - x[j]) * c.get(j, i)) * x[j];
                }
            }
            acc
        })
        .collect();
    Ok(SimplexVector::from_trusted(out))
}

/// Iterates `model` from `x0` until successive states differ by at most
/// `stop_tol` in the sup norm, or `max_issues` updates have been applied.
///
/// The simplex sum is checked after every issue; leaving
/// `[1 - DRIFT_TOL, 1 + DRIFT_TOL]` aborts with [`Error::SumDrift`].
pub fn simulate(
    model: ModelKind,
    c: &InteractionMatrix,
    x0: &SimplexVector,
    max_issues: usize,
    stop_tol: f64,
) -> Result<Trajectory> {
    let model = model.validate()?;
    check_dims(c.n(), x0.n())?;
    if max_issues == 0 {
        return Err(Error::InvalidArgument(
            "max_issues must be at least 1".into(),
        ));
    }
    if !(stop_tol > 0.0) {
        return Err(Error::InvalidArgument("stop_tol must be positive".into()));
    }

    let mut traj = Trajectory::start(model, stop_tol, x0.clone());
    for issue in 1..=max_issues {
        let next = model.step(traj.last(), c)?;
        let sum = next.sum();
        if (sum - 1.0).abs() > DRIFT_TOL {
            return Err(Error::SumDrift { issue, sum });
        }
        let step = next.linf_distance(traj.last());
        traj.push(next);
        if step <= stop_tol {
            break;
        }
    }
    Ok(traj)
}
