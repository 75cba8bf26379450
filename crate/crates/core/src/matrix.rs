//! Validated numeric types: the relative interaction matrix, points of the
//! probability simplex, issue-specific influence matrices and opinion
//! vectors.

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph;

/// Absolute tolerance for row sums, column sums and simplex sums.
pub const VALIDATION_TOL: f64 = 1e-9;

/// Relative interaction matrix `C`: row-stochastic, zero diagonal,
/// irreducible.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix {
    n: usize,
    entries: Vec<f64>,
    doubly_stochastic: bool,
}

impl InteractionMatrix {
    /// Validates a row-major `n * n` buffer. See [`validate_interaction`].
    pub fn from_row_major(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if n < 2 {
            return Err(Error::TooSmall { n });
        }
        for (index, &value) in entries.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
        }
        for (k, &value) in entries.iter().enumerate() {
            if value < 0.0 {
                return Err(Error::NegativeEntry {
                    row: k / n,
                    col: k % n,
                    value,
                });
            }
        }
        for i in 0..n {
            let value = entries[i * n + i];
            if value != 0.0 {
                return Err(Error::Diagonal { index: i, value });
            }
        }
        for row in 0..n {
            let sum: f64 = entries[row * n..(row + 1) * n].iter().sum();
            if (sum - 1.0).abs() > VALIDATION_TOL {
                return Err(Error::RowSum { row, sum });
            }
        }
        let components = graph::component_count(n, |i, j| entries[i * n + j] > 0.0);
        if components != 1 {
            return Err(Error::Reducible { components });
        }
        let doubly_stochastic = (0..n).all(|j| {
            let sum: f64 = (0..n).map(|i| entries[i * n + j]).sum();
            (sum - 1.0).abs() <= VALIDATION_TOL
        });
        Ok(InteractionMatrix {
            n,
            entries,
            doubly_stochastic,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn is_doubly_stochastic(&self) -> bool {
        self.doubly_stochastic
    }

    /// Positivity pattern: `pattern[i][j]` iff `c_ij > 0`.
    pub fn pattern(&self) -> Vec<Vec<bool>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| v > 0.0).collect())
            .collect()
    }

    pub fn column_sum(&self, j: usize) -> f64 {
        (0..self.n).map(|i| self.get(i, j)).sum()
    }
}

/// Validates a raw square array as a relative interaction matrix.
///
/// The input is never renormalized: a matrix that is off by more than
/// [`VALIDATION_TOL`] in some row is rejected.
pub fn validate_interaction(raw: &[Vec<f64>]) -> Result<InteractionMatrix> {
    let n = raw.len();
    for (row, r) in raw.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                row,
                len: r.len(),
                expected: n,
            });
        }
    }
    InteractionMatrix::from_row_major(n, raw.concat())
}

/// A point of the probability simplex: self-confidence, perceived power or
/// social power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimplexVector {
    values: Vec<f64>,
}

impl SimplexVector {
    /// Vertex `e_i` of the `n`-simplex.
    pub fn vertex(n: usize, i: usize) -> Self {
        assert!(i < n, "vertex index {i} out of range for n = {n}");
        let mut values = vec![0.0; n];
        values[i] = 1.0;
        SimplexVector { values }
    }

    /// Barycenter `1/n`.
    pub fn uniform(n: usize) -> Self {
        SimplexVector {
            values: vec![1.0 / n as f64; n],
        }
    }

    /// Wraps values produced by a map known to preserve the simplex.
    pub(crate) fn from_trusted(values: Vec<f64>) -> Self {
        SimplexVector { values }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Number of entries below `threshold`.
    pub fn count_below(&self, threshold: f64) -> usize {
        self.values.iter().filter(|&&v| v < threshold).count()
    }

    /// Index `i` when this vector is exactly the vertex `e_i`.
    pub fn vertex_index(&self) -> Option<usize> {
        let i = self.values.iter().position(|&v| v == 1.0)?;
        self.values
            .iter()
            .enumerate()
            .all(|(j, &v)| j == i || v == 0.0)
            .then_some(i)
    }

    pub fn linf_distance(&self, other: &SimplexVector) -> f64 {
        linf_distance(&self.values, &other.values)
    }
}

impl Index<usize> for SimplexVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

impl AsRef<[f64]> for SimplexVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

pub(crate) fn linf_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Validates a raw vector as a point of the simplex. Rejects rather than
/// projects.
pub fn validate_simplex(raw: &[f64]) -> Result<SimplexVector> {
    if raw.len() < 2 {
        return Err(Error::TooSmall { n: raw.len() });
    }
    for (index, &value) in raw.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index, value });
        }
        if !(-VALIDATION_TOL..=1.0 + VALIDATION_TOL).contains(&value) {
            return Err(Error::Range { index, value });
        }
    }
    let sum: f64 = raw.iter().sum();
    if (sum - 1.0).abs() > VALIDATION_TOL {
        return Err(Error::Sum { sum });
    }
    Ok(SimplexVector {
        values: raw.to_vec(),
    })
}

/// Issue-specific influence matrix `W(x) = diag(x) + (I - diag(x)) C`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl InfluenceMatrix {
    pub(crate) fn from_parts(n: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        InfluenceMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    pub fn column_sum(&self, j: usize) -> f64 {
        (0..self.n).map(|i| self.get(i, j)).sum()
    }
}

/// Opinions `y(s, t)` on a single issue. Unconstrained but finite.
#[derive(Debug, Clone, PartialEq)]
pub struct OpinionVector {
    values: Vec<f64>,
}

impl OpinionVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(OpinionVector { values })
    }

    pub(crate) fn from_trusted(values: Vec<f64>) -> Self {
        OpinionVector { values }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_irreducible;
    use proptest::prelude::*;

    fn ring5() -> Vec<Vec<f64>> {
        (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| if j == (i + 1) % 5 { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn ring_is_valid_and_doubly_stochastic() {
        let c = validate_interaction(&ring5()).unwrap();
        assert!(c.is_doubly_stochastic());
        assert_eq!(c.n(), 5);
    }

    #[test]
    fn identity_rejected_for_diagonal() {
        let id: Vec<Vec<f64>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        assert!(matches!(
            validate_interaction(&id),
            Err(Error::Diagonal { index: 0, .. })
        ));
    }

    #[test]
    fn disconnected_two_cycles_rejected() {
        let m = vec![
            vec![0.0, 1.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0, 0.0],
        ];
        assert!(matches!(
            validate_interaction(&m),
            Err(Error::Reducible { components: 2 })
        ));
    }

    #[test]
    fn row_sum_and_negative_and_shape_errors() {
        let off = vec![vec![0.0, 0.9], vec![1.0, 0.0]];
        assert!(matches!(
            validate_interaction(&off),
            Err(Error::RowSum { row: 0, .. })
        ));

        let neg = vec![
            vec![0.0, 1.5, -0.5],
            vec![0.5, 0.0, 0.5],
            vec![0.5, 0.5, 0.0],
        ];
        assert!(matches!(
            validate_interaction(&neg),
            Err(Error::NegativeEntry { row: 0, col: 2, .. })
        ));

        let ragged = vec![vec![0.0, 1.0], vec![1.0]];
        assert!(matches!(
            validate_interaction(&ragged),
            Err(Error::NotSquare { .. })
        ));

        assert!(matches!(
            validate_interaction(&[vec![0.0]]),
            Err(Error::TooSmall { n: 1 })
        ));

        let nan = vec![vec![0.0, f64::NAN], vec![1.0, 0.0]];
        assert!(matches!(
            validate_interaction(&nan),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn row_stochastic_only_is_not_doubly() {
        let m = vec![
            vec![0.0, 0.5, 0.5],
            vec![1.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
        ];
        let c = validate_interaction(&m).unwrap();
        assert!(!c.is_doubly_stochastic());
    }

    #[test]
    fn validation_does_not_touch_input() {
        let m = vec![
            vec![0.0, 0.5 + 4e-10, 0.5],
            vec![0.5, 0.0, 0.5],
            vec![0.5, 0.5, 0.0],
        ];
        let c = validate_interaction(&m).unwrap();
        assert_eq!(c.rows(), m);
    }

    #[test]
    fn simplex_examples() {
        assert!(validate_simplex(&[0.2; 5]).is_ok());
        assert!(matches!(
            validate_simplex(&[0.6, 0.6, -0.2]),
            Err(Error::Range { index: 2, .. })
        ));
        assert!(validate_simplex(&[0.0439, 0.1305, 0.2834, 0.2452, 0.2970]).is_ok());
        assert!(matches!(
            validate_simplex(&[0.5, 0.6]),
            Err(Error::Sum { .. })
        ));
        assert!(matches!(
            validate_simplex(&[1.0]),
            Err(Error::TooSmall { .. })
        ));
    }

    #[test]
    fn vertices_and_barycenter_validate() {
        for n in 2..=12 {
            for i in 0..n {
                let e = SimplexVector::vertex(n, i);
                assert!(validate_simplex(e.as_slice()).is_ok());
                assert_eq!(e.vertex_index(), Some(i));
            }
            let u = SimplexVector::uniform(n);
            assert!((u.sum() - 1.0).abs() <= 1e-15);
            assert!(validate_simplex(u.as_slice()).is_ok());
            assert_eq!(u.vertex_index(), None);
        }
    }

    fn arb_pattern() -> impl Strategy<Value = (Vec<Vec<bool>>, Vec<usize>)> {
        (2usize..8).prop_flat_map(|n| {
            (
                proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), n),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
    }

    proptest! {
        #[test]
        fn irreducibility_invariant_under_relabeling((pattern, perm) in arb_pattern()) {
            let n = pattern.len();
            let relabeled: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| pattern[perm[i]][perm[j]]).collect())
                .collect();
            prop_assert_eq!(is_irreducible(&pattern), is_irreducible(&relabeled));
        }

        #[test]
        fn doubly_stochastic_transpose_validates(
            (n, weights) in (3usize..8).prop_flat_map(|n| (Just(n), proptest::collection::vec(0.0f64..1.0, n - 1)))
        ) {
            // mixture of the cyclic shifts by 1..n-1: zero diagonal, doubly stochastic
            let mut w = weights;
            w[0] += 0.1;
            let total: f64 = w.iter().sum();
            let raw: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { 0.0 } else { w[(j + n - i) % n - 1] / total })
                        .collect()
                })
                .collect();
            let c = validate_interaction(&raw).unwrap();
            prop_assert!(c.is_doubly_stochastic());
            prop_assert!(is_irreducible(&c.pattern()));
            let t: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| raw[j][i]).collect()).collect();
            let ct = validate_interaction(&t).unwrap();
            prop_assert!(ct.is_doubly_stochastic());
        }
    }
}
