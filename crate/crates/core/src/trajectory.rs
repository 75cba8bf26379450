//! Recorded self-confidence trajectories and their CSV form.
//!
//! The CSV header is `issue,x_1,...,x_n,min,max,sum,zeros`; reals are
//! written with 17 significant digits so a reload reproduces every state
//! bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use crate::dynamics::ModelKind;
use crate::error::{Error, Result};
use crate::matrix::{validate_simplex, SimplexVector};

/// Entries below this are counted as zero.
pub const ZERO_THRESHOLD: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IssueDiagnostics {
    pub min: f64,
    pub max: f64,
    pub sum: f64,
    pub zeros: usize,
}

impl IssueDiagnostics {
    pub fn of(x: &SimplexVector) -> Self {
        IssueDiagnostics {
            min: x.min(),
            max: x.max(),
            sum: x.sum(),
            zeros: x.count_below(ZERO_THRESHOLD),
        }
    }
}

/// States `x(0), x(1), ...` of one simulation plus per-issue diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    model: ModelKind,
    stop_tol: f64,
    states: Vec<SimplexVector>,
    diagnostics: Vec<IssueDiagnostics>,
}

impl Trajectory {
    pub(crate) fn start(model: ModelKind, stop_tol: f64, x0: SimplexVector) -> Self {
        let diagnostics = vec![IssueDiagnostics::of(&x0)];
        Trajectory {
            model,
            stop_tol,
            states: vec![x0],
            diagnostics,
        }
    }

    pub(crate) fn push(&mut self, x: SimplexVector) {
        self.diagnostics.push(IssueDiagnostics::of(&x));
        self.states.push(x);
    }

    /// Rebuilds a trajectory from stored states, recomputing diagnostics.
    pub fn from_states(
        model: ModelKind,
        stop_tol: f64,
        states: Vec<SimplexVector>,
    ) -> Result<Self> {
        let mut iter = states.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty trajectory".into()))?;
        let n = first.n();
        let mut traj = Trajectory::start(model, stop_tol, first);
        for x in iter {
            crate::matrix::check_dims(n, x.n())?;
            traj.push(x);
        }
        Ok(traj)
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn stop_tol(&self) -> f64 {
        self.stop_tol
    }

    pub fn states(&self) -> &[SimplexVector] {
        &self.states
    }

    pub fn diagnostics(&self) -> &[IssueDiagnostics] {
        &self.diagnostics
    }

    pub fn n(&self) -> usize {
        self.states[0].n()
    }

    pub fn last(&self) -> &SimplexVector {
        self.states.last().expect("trajectory is never empty")
    }

    /// Number of updates applied.
    pub fn issues(&self) -> usize {
        self.states.len() - 1
    }

    /// `||x(last) - x(last - 1)||_inf`, or infinity when no update was made.
    pub fn final_step(&self) -> f64 {
        match self.states.as_slice() {
            [.., prev, last] => last.linf_distance(prev),
            _ => f64::INFINITY,
        }
    }

    pub fn converged(&self) -> bool {
        self.final_step() <= self.stop_tol
    }

    /// First issue whose state lies within `tol` of `target` in the sup norm.
    pub fn first_within(&self, target: &SimplexVector, tol: f64) -> Option<usize> {
        self.states
            .iter()
            .position(|x| x.linf_distance(target) <= tol)
    }

    pub fn to_csv(&self) -> String {
        let n = self.n();
        let mut out = String::from("issue");
        for i in 1..=n {
            write!(out, ",x_{i}").unwrap();
        }
        out.push_str(",min,max,sum,zeros\n");
        for (s, (x, d)) in self.states.iter().zip(&self.diagnostics).enumerate() {
            write!(out, "{s}").unwrap();
            for v in x.as_slice() {
                write!(out, ",{}", fmt_real(*v)).unwrap();
            }
            writeln!(
                out,
                ",{},{},{},{}",
                fmt_real(d.min),
                fmt_real(d.max),
                fmt_real(d.sum),
                d.zeros
            )
            .unwrap();
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    /// Parses trajectory CSV. The diagnostic columns are recomputed, not
    /// trusted; each state must validate as a simplex point.
    pub fn from_csv(text: &str, model: ModelKind, stop_tol: f64, path: &Path) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty file".into()))?;
        let columns: Vec<&str> = header.split(',').map(str::trim).collect();
        let n = columns
            .len()
            .checked_sub(5)
            .filter(|&n| n >= 2)
            .ok_or_else(|| parse_err(1, "header has too few columns".into()))?;
        let expected: Vec<String> = std::iter::once("issue".to_string())
            .chain((1..=n).map(|i| format!("x_{i}")))
            .chain(["min", "max", "sum", "zeros"].map(String::from))
            .collect();
        if columns != expected {
            return Err(parse_err(1, format!("unexpected header `{header}`")));
        }

        let mut states = Vec::new();
        for (idx, line) in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != n + 5 {
                return Err(parse_err(
                    idx + 1,
                    format!("expected {} fields, found {}", n + 5, fields.len()),
                ));
            }
            let values = fields[1..=n]
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|e| parse_err(idx + 1, format!("`{f}`: {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            states.push(validate_simplex(&values)?);
        }
        Trajectory::from_states(model, stop_tol, states)
    }

    pub fn read_csv(path: &Path, model: ModelKind, stop_tol: f64) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv(&text, model, stop_tol, path)
    }
}

/// 17 significant digits, scientific notation.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{simulate, STOP_TOL};
    use crate::matrix::validate_interaction;

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let c = validate_interaction(&[
            vec![0.0, 0.7, 0.3],
            vec![0.2, 0.0, 0.8],
            vec![0.5, 0.5, 0.0],
        ])
        .unwrap();
        let x0 = validate_simplex(&[0.1, 0.0, 0.9]).unwrap();
        let traj = simulate(ModelKind::Modified, &c, &x0, 50, STOP_TOL).unwrap();
        let csv = traj.to_csv();
        assert!(csv.starts_with("issue,x_1,x_2,x_3,min,max,sum,zeros\n"));
        let back =
            Trajectory::from_csv(&csv, ModelKind::Modified, STOP_TOL, Path::new("t.csv")).unwrap();
        assert_eq!(back, traj);
    }

    #[test]
    fn diagnostics_track_states() {
        let x = validate_simplex(&[0.5, 0.5, 0.0, 0.0]).unwrap();
        let d = IssueDiagnostics::of(&x);
        assert_eq!((d.min, d.max, d.sum, d.zeros), (0.0, 0.5, 1.0, 2));
    }

    #[test]
    fn malformed_csv_rejected() {
        let p = Path::new("bad.csv");
        assert!(Trajectory::from_csv("", ModelKind::Modified, 1e-10, p).is_err());
        assert!(Trajectory::from_csv(
            "issue,a,b,min,max,sum,zeros\n",
            ModelKind::Modified,
            1e-10,
            p
        )
        .is_err());
        let ragged = "issue,x_1,x_2,min,max,sum,zeros\n0,0.5,0.5,0.5,0.5,1\n";
        assert!(matches!(
            Trajectory::from_csv(ragged, ModelKind::Modified, 1e-10, p),
            Err(Error::Parse { line: 2, .. })
        ));
        let header_only = "issue,x_1,x_2,min,max,sum,zeros\n";
        assert!(Trajectory::from_csv(header_only, ModelKind::Modified, 1e-10, p).is_err());
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_real(0.2), "2.0000000000000001e-1");
        assert_eq!(fmt_real(0.2).parse::<f64>().unwrap(), 0.2);
    }
}
