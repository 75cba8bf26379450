//! The `dfsim` command line.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 invalid input, 3 no
//! convergence within the issue cap, 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    analyze_trajectory, brute_force_fixed_points, candidates_to_json, ConvergenceReport,
};
use crate::dynamics::{simulate, ModelKind, STOP_TOL};
use crate::error::Error;
use crate::harness::config::{ConfigFile, MatrixSource, SimulationConfig, X0Source};
use crate::harness::generate::{generate_matrix, MatrixKind, RandomMatrixSpec, SINKHORN_TOL};
use crate::harness::io::{matrix_to_csv, write_text};
use crate::harness::presets::{run_preset_with, Preset, PRESETS, PRESET_MAX_ISSUES};
use crate::trajectory::{fmt_real, Trajectory};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "dfsim",
    version,
    about = "Simulate and analyze DeGroot-Friedkin self-appraisal dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterate a self-confidence map and write trajectory CSV + report JSON
    Simulate(SimulateArgs),
    /// Analyze a saved trajectory, or search for fixed points on a grid
    Analyze(AnalyzeArgs),
    /// Run one of the built-in experiments (or `all`)
    Preset(PresetArgs),
    /// Generate a random interaction matrix
    Generate(GenerateArgs),
    /// Run the original and finite-T maps side by side
    Compare(CompareArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModelArg {
    Modified,
    Original,
    FiniteT,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum KindArg {
    Row,
    Doubly,
}

impl From<KindArg> for MatrixKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Row => MatrixKind::RowStochastic,
            KindArg::Doubly => MatrixKind::DoublyStochastic,
        }
    }
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// Interaction matrix CSV (n rows of n values, no header)
    #[arg(long, value_name = "CSV", group = "matrix_source")]
    matrix: Option<PathBuf>,
    /// Built-in matrix: complete, ring, c1, c2
    #[arg(long, value_name = "NAME", group = "matrix_source")]
    matrix_preset: Option<String>,
    /// Random matrix of this kind on the complete graph (needs --n)
    #[arg(
        long,
        value_enum,
        value_name = "KIND",
        group = "matrix_source",
        requires = "n"
    )]
    random: Option<KindArg>,
    /// Size of the random matrix
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    sinkhorn_tol: Option<f64>,
}

#[derive(Args, Debug)]
struct X0Args {
    /// Initial self-confidence CSV (one row)
    #[arg(long, value_name = "CSV", group = "x0_source")]
    x0: Option<PathBuf>,
    /// Built-in initial condition: fig3 ... fig10
    #[arg(long, value_name = "NAME", group = "x0_source")]
    x0_preset: Option<String>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// JSON config file; flags override its values
    #[arg(long, value_name = "JSON")]
    config: Option<PathBuf>,
    /// Seed for random matrices and random initial conditions
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_issues: Option<usize>,
    #[arg(long)]
    stop_tol: Option<f64>,
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    #[command(flatten)]
    x0: X0Args,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Discussion rounds per issue for the finite-T model
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    t_steps: Option<u32>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    #[arg(long)]
    seed: Option<u64>,
    /// Trajectory CSV written by `simulate`
    #[arg(long, value_name = "CSV")]
    trajectory: Option<PathBuf>,
    /// Model that produced the trajectory (recorded only)
    #[arg(long, value_enum, default_value = "modified")]
    model: ModelArg,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    t_steps: Option<u32>,
    #[arg(long, default_value_t = STOP_TOL)]
    stop_tol: f64,
    /// Enumerate fixed points of the Modified map on a simplex grid
    #[arg(long)]
    fixed_points: bool,
    #[arg(long, default_value_t = 0.02)]
    grid_step: f64,
    #[arg(long, default_value_t = 1e-10)]
    residual_tol: f64,
    #[arg(long, value_name = "DIR", default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct PresetArgs {
    /// Preset name, or `all`
    name: String,
    #[arg(long, default_value_t = PRESET_MAX_ISSUES)]
    max_issues: usize,
    #[arg(long, default_value_t = STOP_TOL)]
    stop_tol: f64,
    #[arg(long, value_name = "DIR", default_value = ".")]
    out_dir: PathBuf,
    /// Worker threads when running `all`
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "row")]
    kind: KindArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = SINKHORN_TOL)]
    sinkhorn_tol: f64,
    /// Output CSV; stdout when omitted
    #[arg(long, value_name = "CSV")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    #[command(flatten)]
    x0: X0Args,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    t_steps: u32,
}

enum Failure {
    Usage(String),
    Lib(Error),
    NotConverged(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Entry point for the binary.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Runs one invocation, writing normal output to `out` and diagnostics to
/// `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args, out),
        Command::Analyze(args) => cmd_analyze(args, out),
        Command::Preset(args) => cmd_preset(args, out),
        Command::Generate(args) => cmd_generate(args, out),
        Command::Compare(args) => cmd_compare(args, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::NotConverged(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_NO_CONVERGENCE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_validation() {
                EXIT_INVALID
            } else if e.is_non_convergence() {
                EXIT_NO_CONVERGENCE
            } else {
                EXIT_FAILURE
            }
        }
    }
}

impl MatrixArgs {
    fn source(&self, seed: Option<u64>) -> CliResult<Option<MatrixSource>> {
        if let Some(path) = &self.matrix {
            return Ok(Some(MatrixSource::File(path.clone())));
        }
        if let Some(name) = &self.matrix_preset {
            return Ok(Some(MatrixSource::Preset(name.clone())));
        }
        if let Some(kind) = self.random {
            let n = self
                .n
                .ok_or_else(|| Failure::Usage("--random needs --n".into()))?;
            return Ok(Some(MatrixSource::Random(RandomMatrixSpec {
                n,
                kind: kind.into(),
                seed: seed.unwrap_or(0),
                sinkhorn_tol: self.sinkhorn_tol.unwrap_or(SINKHORN_TOL),
            })));
        }
        Ok(None)
    }
}

impl X0Args {
    fn source(&self) -> Option<X0Source> {
        if let Some(path) = &self.x0 {
            Some(X0Source::File(path.clone()))
        } else {
            self.x0_preset.clone().map(X0Source::Preset)
        }
    }
}

fn resolve_model(
    flag: Option<ModelArg>,
    t_steps: Option<u32>,
    from_file: Option<ModelKind>,
) -> CliResult<Option<ModelKind>> {
    match (flag, t_steps) {
        (Some(ModelArg::FiniteT), Some(t)) | (None, Some(t)) => Ok(Some(ModelKind::FiniteT(t))),
        (Some(ModelArg::FiniteT), None) => match from_file {
            Some(m @ ModelKind::FiniteT(_)) => Ok(Some(m)),
            _ => Err(Failure::Usage("--model finite-t needs --t-steps".into())),
        },
        (Some(_), Some(_)) => Err(Failure::Usage(
            "--t-steps only applies to --model finite-t".into(),
        )),
        (Some(ModelArg::Modified), None) => Ok(Some(ModelKind::Modified)),
        (Some(ModelArg::Original), None) => Ok(Some(ModelKind::Original)),
        (None, None) => Ok(from_file),
    }
}

fn merged_config(
    matrix: &MatrixArgs,
    x0: &X0Args,
    run: &RunArgs,
    model: Option<ModelArg>,
    t_steps: Option<u32>,
) -> CliResult<SimulationConfig> {
    let mut file = match &run.config {
        Some(path) => ConfigFile::read(path)?,
        None => ConfigFile::default(),
    };
    if let Some(src) = matrix.source(run.seed)? {
        file.matrix = Some(src);
    } else if let (Some(seed), Some(MatrixSource::Random(spec))) = (run.seed, file.matrix.as_mut())
    {
        spec.seed = seed;
    }
    if let Some(src) = x0.source() {
        file.x0 = Some(src);
    } else if let Some(seed) = run.seed {
        if matches!(file.x0, None | Some(X0Source::Random { .. })) {
            file.x0 = Some(X0Source::Random { seed });
        }
    }
    file.model = resolve_model(model, t_steps, file.model)?;
    file.max_issues = run.max_issues.or(file.max_issues);
    file.stop_tol = run.stop_tol.or(file.stop_tol);
    file.out_dir = run.out_dir.clone().or(file.out_dir);
    if file.matrix.is_none() {
        return Err(Failure::Usage(
            "no interaction matrix: use --matrix, --matrix-preset, --random or --config".into(),
        ));
    }
    Ok(SimulationConfig::resolve(file)?)
}

fn write_run(
    dir: &Path,
    stem: &str,
    traj: &Trajectory,
    report: &ConvergenceReport,
) -> CliResult<()> {
    write_text(&dir.join(format!("{stem}trajectory.csv")), &traj.to_csv())?;
    write_text(&dir.join(format!("{stem}report.json")), &report.to_json())?;
    Ok(())
}

fn summary_line(name: &str, report: &ConvergenceReport) -> String {
    let limit: Vec<String> = report
        .limit
        .as_slice()
        .iter()
        .map(|v| format!("{v:.6}"))
        .collect();
    format!(
        "{name}: converged={} issues={} residual={:.3e} limit=[{}] min_monotone={} max_monotone={}",
        report.converged,
        report.issues_used,
        report.final_residual,
        limit.join(", "),
        report.min_monotone,
        report.max_monotone
    )
}

fn cmd_simulate(args: SimulateArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = merged_config(&args.matrix, &args.x0, &args.run, args.model, args.t_steps)?;
    let c = cfg.matrix.load()?;
    let x0 = cfg.x0.load(c.n())?;
    let traj = simulate(cfg.model, &c, &x0, cfg.max_issues, cfg.stop_tol)?;
    let report = analyze_trajectory(&traj, &c)?;
    write_run(&cfg.out_dir, "", &traj, &report)?;
    let _ = writeln!(out, "{}", summary_line(&cfg.model.to_string(), &report));
    if report.converged {
        Ok(())
    } else {
        Err(Failure::NotConverged(format!(
            "no convergence within {} issues (last step {:.3e})",
            cfg.max_issues, report.final_residual
        )))
    }
}

fn cmd_analyze(args: AnalyzeArgs, out: &mut dyn Write) -> CliResult<()> {
    let source = args.matrix.source(args.seed)?.ok_or_else(|| {
        Failure::Usage("analyze needs --matrix, --matrix-preset or --random".into())
    })?;
    let c = source.load()?;
    if args.trajectory.is_none() && !args.fixed_points {
        return Err(Failure::Usage(
            "nothing to do: pass --trajectory and/or --fixed-points".into(),
        ));
    }
    if let Some(path) = &args.trajectory {
        let model =
            resolve_model(Some(args.model), args.t_steps, None)?.unwrap_or(ModelKind::Modified);
        let traj = Trajectory::read_csv(path, model, args.stop_tol)?;
        let report = analyze_trajectory(&traj, &c)?;
        let json = report.to_json();
        write_text(&args.out_dir.join("report.json"), &json)?;
        let _ = writeln!(out, "{json}");
    }
    if args.fixed_points {
        let candidates = brute_force_fixed_points(&c, args.grid_step, args.residual_tol)?;
        let json = candidates_to_json(&candidates);
        write_text(&args.out_dir.join("fixed_points.json"), &json)?;
        let _ = writeln!(out, "{json}");
    }
    Ok(())
}

fn cmd_preset(args: PresetArgs, out: &mut dyn Write) -> CliResult<()> {
    let selected: Vec<&Preset> = if args.name == "all" {
        PRESETS.iter().collect()
    } else {
        vec![Preset::by_name(&args.name)?]
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| Failure::Usage(format!("--jobs: {e}")))?;
    let results: Vec<_> = pool.install(|| {
        selected
            .par_iter()
            .map(|p| run_preset_with(p.name, args.max_issues, args.stop_tol))
            .collect()
    });

    let mut unconverged = Vec::new();
    for (preset, result) in selected.iter().zip(results) {
        let (traj, report) = result?;
        write_run(&args.out_dir, &format!("{}_", preset.name), &traj, &report)?;
        let _ = writeln!(out, "{}", summary_line(preset.name, &report));
        if !report.converged {
            unconverged.push(preset.name);
        }
    }
    if unconverged.is_empty() {
        Ok(())
    } else {
        Err(Failure::NotConverged(format!(
            "no convergence within {} issues: {}",
            args.max_issues,
            unconverged.join(", ")
        )))
    }
}

fn cmd_generate(args: GenerateArgs, out: &mut dyn Write) -> CliResult<()> {
    let c = generate_matrix(&RandomMatrixSpec {
        n: args.n,
        kind: args.kind.into(),
        seed: args.seed,
        sinkhorn_tol: args.sinkhorn_tol,
    })?;
    let csv = matrix_to_csv(&c);
    match &args.out {
        Some(path) => write_text(path, &csv)?,
        None => {
            let _ = write!(out, "{csv}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CompareSummary {
    t_steps: u32,
    issues_original: usize,
    issues_finite_t: usize,
    #[serde(serialize_with = "crate::json::real")]
    max_distance: f64,
    #[serde(serialize_with = "crate::json::real")]
    final_distance: f64,
}

/// Sup-norm distance between two trajectories issue by issue; the shorter
/// one is held at its final state.
pub fn per_issue_distance(a: &Trajectory, b: &Trajectory) -> Vec<f64> {
    let len = a.states().len().max(b.states().len());
    let at = |t: &Trajectory, s: usize| t.states().get(s).unwrap_or_else(|| t.last()).clone();
    (0..len)
        .map(|s| at(a, s).linf_distance(&at(b, s)))
        .collect()
}

fn cmd_compare(args: CompareArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = merged_config(&args.matrix, &args.x0, &args.run, None, None)?;
    let c = cfg.matrix.load()?;
    let x0 = cfg.x0.load(c.n())?;
    let original = simulate(ModelKind::Original, &c, &x0, cfg.max_issues, cfg.stop_tol)?;
    let finite = simulate(
        ModelKind::FiniteT(args.t_steps),
        &c,
        &x0,
        cfg.max_issues,
        cfg.stop_tol,
    )?;
    let distances = per_issue_distance(&original, &finite);

    let mut csv = String::from("issue,distance\n");
    for (s, d) in distances.iter().enumerate() {
        csv.push_str(&format!("{s},{}\n", fmt_real(*d)));
    }
    write_text(&cfg.out_dir.join("compare.csv"), &csv)?;
    let summary = CompareSummary {
        t_steps: args.t_steps,
        issues_original: original.issues(),
        issues_finite_t: finite.issues(),
        max_distance: distances.iter().copied().fold(0.0, f64::max),
        final_distance: *distances.last().unwrap_or(&0.0),
    };
    let json = serde_json::to_string_pretty(&summary).map_err(Error::from)?;
    write_text(&cfg.out_dir.join("compare.json"), &json)?;
    let _ = writeln!(out, "{json}");

    if original.converged() && finite.converged() {
        Ok(())
    } else {
        Err(Failure::NotConverged(format!(
            "no convergence within {} issues",
            cfg.max_issues
        )))
    }
}
