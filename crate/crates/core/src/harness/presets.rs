//! The five-individual networks and initial conditions from the reference
//! experiments, embedded with their printed decimals.

use crate::analysis::{analyze_trajectory, ConvergenceReport};
use crate::dynamics::{simulate, ModelKind, STOP_TOL};
use crate::error::{Error, Result};
use crate::matrix::{validate_interaction, validate_simplex, InteractionMatrix, SimplexVector};
use crate::trajectory::Trajectory;

/// Default issue cap for preset runs.
pub const PRESET_MAX_ISSUES: usize = 10_000;

/// Doubly stochastic weights on the directed complete graph.
pub const C_COMPLETE: [[f64; 5]; 5] = [
    [0.0, 0.1, 0.3, 0.4, 0.2],
    [0.6, 0.0, 0.1, 0.15, 0.15],
    [0.2, 0.3, 0.0, 0.3, 0.2],
    [0.1, 0.35, 0.1, 0.0, 0.45],
    [0.1, 0.25, 0.5, 0.15, 0.0],
];

/// Directed ring `1 -> 2 -> 3 -> 4 -> 5 -> 1`.
pub const C_RING: [[f64; 5]; 5] = [
    [0.0, 1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 1.0],
    [1.0, 0.0, 0.0, 0.0, 0.0],
];

/// Row-stochastic (not doubly stochastic) complete-graph weights.
pub const C1_COMPLETE: [[f64; 5]; 5] = [
    [0.0, 0.2, 0.3, 0.4, 0.1],
    [0.6, 0.0, 0.1, 0.15, 0.15],
    [0.3, 0.3, 0.0, 0.3, 0.1],
    [0.4, 0.15, 0.1, 0.0, 0.35],
    [0.1, 0.25, 0.2, 0.45, 0.0],
];

/// Row-stochastic complete-graph weights with one dominant edge.
pub const C2_COMPLETE: [[f64; 5]; 5] = [
    [0.0, 0.9, 0.02, 0.03, 0.05],
    [0.5, 0.0, 0.3, 0.1, 0.1],
    [0.25, 0.25, 0.0, 0.2, 0.3],
    [0.7, 0.1, 0.05, 0.0, 0.15],
    [0.35, 0.25, 0.25, 0.15, 0.0],
];

pub const X0_FIG3: [f64; 5] = [0.0439, 0.1305, 0.2834, 0.2452, 0.2970];
pub const X0_FIG4: [f64; 5] = [0.2080, 0.0113, 0.2693, 0.2962, 0.2152];
pub const X0_FIG5: [f64; 5] = [0.6097, 0.0275, 0.2391, 0.0399, 0.0838];
pub const X0_FIG6: [f64; 5] = [0.2920, 0.2464, 0.1124, 0.3370, 0.0122];
pub const X0_FIG7: [f64; 5] = [0.1911, 0.3681, 0.1305, 0.2245, 0.0858];
pub const X0_FIG8: [f64; 5] = [0.4675, 0.2667, 0.0676, 0.0727, 0.1255];
/// Printed decimals sum to 1.0001.
pub const X0_FIG9: [f64; 5] = [0.1709, 0.1486, 0.2981, 0.3097, 0.0728];
pub const X0_FIG10: [f64; 5] = [0.1459, 0.3592, 0.3462, 0.0859, 0.0628];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixPreset {
    Complete,
    Ring,
    C1Complete,
    C2Complete,
}

impl MatrixPreset {
    pub const ALL: [MatrixPreset; 4] = [
        MatrixPreset::Complete,
        MatrixPreset::Ring,
        MatrixPreset::C1Complete,
        MatrixPreset::C2Complete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MatrixPreset::Complete => "complete",
            MatrixPreset::Ring => "ring",
            MatrixPreset::C1Complete => "c1",
            MatrixPreset::C2Complete => "c2",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| Error::UnknownPreset(name.to_string()))
    }

    pub fn raw(self) -> &'static [[f64; 5]; 5] {
        match self {
            MatrixPreset::Complete => &C_COMPLETE,
            MatrixPreset::Ring => &C_RING,
            MatrixPreset::C1Complete => &C1_COMPLETE,
            MatrixPreset::C2Complete => &C2_COMPLETE,
        }
    }

    pub fn matrix(self) -> InteractionMatrix {
        let rows: Vec<Vec<f64>> = self.raw().iter().map(|r| r.to_vec()).collect();
        validate_interaction(&rows).expect("embedded preset matrix is valid")
    }
}

/// One experiment: a matrix and a printed initial condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub matrix: MatrixPreset,
    /// Key of the initial condition, `fig3` ... `fig10`.
    pub x0_name: &'static str,
    pub x0_printed: &'static [f64; 5],
}

pub const PRESETS: [Preset; 8] = [
    Preset {
        name: "c1-fig7",
        matrix: MatrixPreset::C1Complete,
        x0_name: "fig7",
        x0_printed: &X0_FIG7,
    },
    Preset {
        name: "c1-fig8",
        matrix: MatrixPreset::C1Complete,
        x0_name: "fig8",
        x0_printed: &X0_FIG8,
    },
    Preset {
        name: "c2-fig10",
        matrix: MatrixPreset::C2Complete,
        x0_name: "fig10",
        x0_printed: &X0_FIG10,
    },
    Preset {
        name: "c2-fig9",
        matrix: MatrixPreset::C2Complete,
        x0_name: "fig9",
        x0_printed: &X0_FIG9,
    },
    Preset {
        name: "complete-fig3",
        matrix: MatrixPreset::Complete,
        x0_name: "fig3",
        x0_printed: &X0_FIG3,
    },
    Preset {
        name: "complete-fig4",
        matrix: MatrixPreset::Complete,
        x0_name: "fig4",
        x0_printed: &X0_FIG4,
    },
    Preset {
        name: "ring-fig5",
        matrix: MatrixPreset::Ring,
        x0_name: "fig5",
        x0_printed: &X0_FIG5,
    },
    Preset {
        name: "ring-fig6",
        matrix: MatrixPreset::Ring,
        x0_name: "fig6",
        x0_printed: &X0_FIG6,
    },
];

impl Preset {
    pub fn by_name(name: &str) -> Result<&'static Preset> {
        PRESETS
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::UnknownPreset(name.to_string()))
    }

    pub fn initial_state(&self) -> SimplexVector {
        preset_x0(self.x0_printed)
    }
}

/// The printed vector itself when it lies on the simplex; otherwise the
/// printed vector divided by its sum (four-decimal rounding can push the
/// sum off 1).
fn preset_x0(printed: &[f64; 5]) -> SimplexVector {
    validate_simplex(printed).unwrap_or_else(|_| {
        let sum: f64 = printed.iter().sum();
        let scaled: Vec<f64> = printed.iter().map(|v| v / sum).collect();
        validate_simplex(&scaled).expect("rescaled preset lies on the simplex")
    })
}

/// Initial condition by key (`fig3` ... `fig10`).
pub fn x0_preset(name: &str) -> Result<SimplexVector> {
    PRESETS
        .iter()
        .find(|p| p.x0_name == name)
        .map(Preset::initial_state)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

/// Runs a preset with the Modified map and default limits.
pub fn run_preset(name: &str) -> Result<(Trajectory, ConvergenceReport)> {
    run_preset_with(name, PRESET_MAX_ISSUES, STOP_TOL)
}

pub fn run_preset_with(
    name: &str,
    max_issues: usize,
    stop_tol: f64,
) -> Result<(Trajectory, ConvergenceReport)> {
    let preset = Preset::by_name(name)?;
    let c = preset.matrix.matrix();
    let traj = simulate(
        ModelKind::Modified,
        &c,
        &preset.initial_state(),
        max_issues,
        stop_tol,
    )?;
    let report = analyze_trajectory(&traj, &c)?;
    Ok((traj, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_validate_with_expected_flags() {
        assert!(MatrixPreset::Complete.matrix().is_doubly_stochastic());
        assert!(MatrixPreset::Ring.matrix().is_doubly_stochastic());
        assert!(!MatrixPreset::C1Complete.matrix().is_doubly_stochastic());
        assert!(!MatrixPreset::C2Complete.matrix().is_doubly_stochastic());
    }

    #[test]
    fn printed_initial_conditions() {
        for p in &PRESETS {
            let x = p.initial_state();
            if p.name == "c2-fig9" {
                assert!(validate_simplex(p.x0_printed).is_err());
                assert!((x.sum() - 1.0).abs() < 1e-15);
            } else {
                assert_eq!(x.as_slice(), p.x0_printed.as_slice(), "{}", p.name);
            }
        }
    }

    #[test]
    fn presets_are_sorted_and_unique() {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(names, sorted);
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(run_preset("nope"), Err(Error::UnknownPreset(_))));
        assert!(matches!(x0_preset("fig2"), Err(Error::UnknownPreset(_))));
        assert!(matches!(
            MatrixPreset::from_name("star"),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn complete_fig3_reaches_barycenter() {
        let (traj, report) = run_preset("complete-fig3").unwrap();
        assert!(report.converged);
        let u = SimplexVector::uniform(5);
        assert!(traj.states()[20].linf_distance(&u) <= 1e-3);
        assert!(report.min_monotone && report.max_monotone);
    }
}
