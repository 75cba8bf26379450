use serde::{Deserialize, Serialize};

use crate::dynamics::modified_step;
use crate::error::{Error, Result};
use crate::graph;
use crate::matrix::{check_dims, validate_interaction, InteractionMatrix, SimplexVector};

/// Which root of `x - x^2 = a (n-1) / n^2` a coordinate sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Root {
    Low,
    High,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquilibriumKind {
    /// The vertex `e_i` (0-based).
    Vertex(usize),
    /// The barycenter `1/n`.
    Uniform,
    /// Every coordinate solves `x_i - x_i^2 = a (n-1) / n^2`.
    QuadraticFamily {
        #[serde(serialize_with = "crate::json::real")]
        a: f64,
        root_pattern: Vec<Root>,
    },
    /// Any other interior fixed point.
    Interior,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumCandidate {
    #[serde(serialize_with = "crate::json::reals")]
    pub x: SimplexVector,
    pub kind: EquilibriumKind,
    #[serde(serialize_with = "crate::json::real")]
    pub residual: f64,
}

const CLASSIFY_TOL: f64 = 1e-9;

impl EquilibriumCandidate {
    /// Labels `x` and records its fixed-point residual under `c`.
    pub fn classify(x: SimplexVector, c: &InteractionMatrix) -> Result<Self> {
        let residual = verify_equilibrium(&x, c)?;
        let n = x.n();
        let kind = if let Some(i) =
            (0..n).find(|&i| x.linf_distance(&SimplexVector::vertex(n, i)) <= CLASSIFY_TOL)
        {
            EquilibriumKind::Vertex(i)
        } else if x.linf_distance(&SimplexVector::uniform(n)) <= CLASSIFY_TOL {
            EquilibriumKind::Uniform
        } else {
            quadratic_kind(&x).unwrap_or(EquilibriumKind::Interior)
        };
        Ok(EquilibriumCandidate { x, kind, residual })
    }
}

fn quadratic_kind(x: &SimplexVector) -> Option<EquilibriumKind> {
    let n = x.n() as f64;
    let g: Vec<f64> = x.as_slice().iter().map(|v| v - v * v).collect();
    let g0 = g[0];
    if g0 <= 0.0 || g.iter().any(|&gi| (gi - g0).abs() > CLASSIFY_TOL) {
        return None;
    }
    Some(EquilibriumKind::QuadraticFamily {
        a: g0 * n * n / (n - 1.0),
        root_pattern: x
            .as_slice()
            .iter()
            .map(|&v| if v > 0.5 { Root::High } else { Root::Low })
            .collect(),
    })
}

/// `||modified_step(x, c) - x||_inf`.
pub fn verify_equilibrium(x: &SimplexVector, c: &InteractionMatrix) -> Result<f64> {
    Ok(modified_step(x, c)?.linf_distance(x))
}

fn discriminant(a: f64, n: usize) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "a must be positive, got {a}"
        )));
    }
    if n < 2 {
        return Err(Error::TooSmall { n });
    }
    let nf = n as f64;
    let d = 1.0 - 4.0 * a * (nf - 1.0) / (nf * nf);
    if d >= 0.0 {
        Ok(d)
    } else if d > -4.0 * f64::EPSILON {
        // rounding at the repeated-root boundary a = n^2 / (4 (n-1))
        Ok(0.0)
    } else {
        Err(Error::Discriminant {
            a,
            n,
            discriminant: d,
        })
    }
}

/// Largest `a` for which the roots are real, `n^2 / (4 (n-1))`.
pub fn max_admissible_a(n: usize) -> f64 {
    let nf = n as f64;
    nf * nf / (4.0 * (nf - 1.0))
}

/// Roots `(x_low, x_high)` of `x - x^2 = a (n-1) / n^2`.
///
/// The low root is taken as `c / x_high` (product of roots), which avoids
/// cancellation when it is small.
pub fn quadratic_roots(a: f64, n: usize) -> Result<(f64, f64)> {
    let d = discriminant(a, n)?;
    let nf = n as f64;
    let product = a * (nf - 1.0) / (nf * nf);
    let high = 0.5 * (1.0 + d.sqrt());
    Ok((product / high, high))
}

/// `n - (n - 2k) sqrt(1 - 4a(n-1)/n^2) - 2`: twice the excess of the
/// coordinate sum over 1 for a candidate with `k` high roots.
pub fn mixed_root_sum_check(k: usize, a: f64, n: usize) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
    }
    let d = discriminant(a, n)?;
    let nf = n as f64;
    Ok(nf - (nf - 2.0 * k as f64) * d.sqrt() - 2.0)
}

/// The two-individual equilibrium `(x_high, x_low)` for parameter `a`.
///
/// With `n = 2` the only valid interaction matrix is `[[0,1],[1,0]]`, and
/// every such point is a fixed point of the Modified map.
pub fn n2_equilibrium_family(a: f64) -> Result<EquilibriumCandidate> {
    if a > 1.0 {
        return Err(Error::Discriminant {
            a,
            n: 2,
            discriminant: 1.0 - a,
        });
    }
    let (low, high) = quadratic_roots(a, 2)?;
    let c = validate_interaction(&[vec![0.0, 1.0], vec![1.0, 0.0]])?;
    let x = SimplexVector::from_trusted(vec![high, low]);
    let residual = verify_equilibrium(&x, &c)?;
    Ok(EquilibriumCandidate {
        x,
        kind: EquilibriumKind::QuadraticFamily {
            a,
            root_pattern: vec![Root::High, Root::Low],
        },
        residual,
    })
}

/// Whether `T = C' + diag(x) - C' diag(x)` has a strongly connected
/// positivity pattern.
pub fn check_t_matrix_irreducible(x: &SimplexVector, c: &InteractionMatrix) -> Result<bool> {
    let n = c.n();
    check_dims(n, x.n())?;
    let t = |i: usize, j: usize| {
        let diag = if i == j { x[i] } else { 0.0 };
        c.get(j, i) + diag - c.get(j, i) * x[j]
    };
    Ok(graph::component_count(n, |i, j| t(i, j) > 0.0) == 1)
}
