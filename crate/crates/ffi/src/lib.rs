//! C ABI over `degroot_friedkin`.
//!
//! Conventions:
//! - Every fallible function returns a [`DfStatus`]; results go through out
//!   pointers. On failure `df_last_error()` describes the problem.
//! - Matrices and trajectories are opaque handles owned by the caller and
//!   released with the matching `*_free` function.
//! - Vectors are passed as `(const double *, size_t n)`; output buffers must
//!   hold `n` doubles.
//! - Panics never cross the boundary; they surface as `DF_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use degroot_friedkin::analysis::{analyze_trajectory, quadratic_roots, verify_equilibrium};
use degroot_friedkin::dynamics::{finite_t_step, modified_step, original_df_step, simulate};
use degroot_friedkin::harness::{generate_matrix, run_preset_with, MatrixPreset, RandomMatrixSpec};
use degroot_friedkin::{
    validate_simplex, Error, InteractionMatrix, ModelKind, SimplexVector, Trajectory,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DimensionMismatch = 3,
    NoConvergence = 4,
    SumDrift = 5,
    Io = 6,
    Panic = 7,
}

/// Model codes accepted by `df_simulate`.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DfModel {
    Modified = 0,
    Original = 1,
    FiniteT = 2,
}

/// Interaction matrix handle.
pub struct DfMatrix(InteractionMatrix);

/// Recorded trajectory handle.
pub struct DfTrajectory(Trajectory);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DfReport {
    pub converged: bool,
    pub issues_used: usize,
    /// Last successive-state distance; infinite for a single-state run.
    pub final_residual: f64,
    pub min_monotone: bool,
    pub max_monotone: bool,
    pub lyapunov_nonincreasing: bool,
    pub n2_warning: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(DfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DimensionMismatch { .. } => DfStatus::DimensionMismatch,
            Error::SumDrift { .. } => DfStatus::SumDrift,
            Error::Io { .. } => DfStatus::Io,
            e if e.is_non_convergence() => DfStatus::NoConvergence,
            _ => DfStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DfStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            DfStatus::Panic
        }
    }
}

unsafe fn slice<'a>(p: *const f64, n: usize, what: &str) -> Result<&'a [f64], Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn simplex(p: *const f64, n: usize) -> Result<SimplexVector, Failure> {
    Ok(validate_simplex(slice(p, n, "x")?)?)
}

unsafe fn matrix<'a>(c: *const DfMatrix) -> Result<&'a InteractionMatrix, Failure> {
    c.as_ref().map(|m| &m.0).ok_or_else(|| null("matrix"))
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(DfStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_vec(out: *mut f64, n: usize, x: &SimplexVector) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output buffer"));
    }
    if x.n() != n {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            found: n,
        }
        .into());
    }
    ptr::copy_nonoverlapping(x.as_slice().as_ptr(), out, n);
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn df_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Validates an `n x n` row-major interaction matrix.
#[no_mangle]
pub unsafe extern "C" fn df_matrix_new(
    entries: *const f64,
    n: usize,
    out: *mut *mut DfMatrix,
) -> DfStatus {
    guard(|| {
        let n2 = n
            .checked_mul(n)
            .ok_or_else(|| Failure(DfStatus::InvalidInput, "n too large".into()))?;
        let c = InteractionMatrix::from_row_major(n, slice(entries, n2, "entries")?.to_vec())?;
        write_out(out, Box::into_raw(Box::new(DfMatrix(c))))
    })
}

/// Built-in matrix: `complete`, `ring`, `c1` or `c2`.
#[no_mangle]
pub unsafe extern "C" fn df_matrix_preset(
    name: *const c_char,
    out: *mut *mut DfMatrix,
) -> DfStatus {
    guard(|| {
        let c = MatrixPreset::from_name(c_str(name, "name")?)?.matrix();
        write_out(out, Box::into_raw(Box::new(DfMatrix(c))))
    })
}

/// Seeded random matrix on the complete graph; `doubly` selects Sinkhorn
/// balancing with the default tolerance.
#[no_mangle]
pub unsafe extern "C" fn df_matrix_generate(
    n: usize,
    doubly: bool,
    seed: u64,
    out: *mut *mut DfMatrix,
) -> DfStatus {
    guard(|| {
        let spec = if doubly {
            RandomMatrixSpec::doubly_stochastic(n, seed)
        } else {
            RandomMatrixSpec::row_stochastic(n, seed)
        };
        let c = generate_matrix(&spec)?;
        write_out(out, Box::into_raw(Box::new(DfMatrix(c))))
    })
}

/// Dimension of a matrix; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn df_matrix_n(c: *const DfMatrix) -> usize {
    c.as_ref().map_or(0, |m| m.0.n())
}

#[no_mangle]
pub unsafe extern "C" fn df_matrix_is_doubly_stochastic(c: *const DfMatrix) -> bool {
    c.as_ref().is_some_and(|m| m.0.is_doubly_stochastic())
}

#[no_mangle]
pub unsafe extern "C" fn df_matrix_free(c: *mut DfMatrix) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

#[no_mangle]
pub unsafe extern "C" fn df_modified_step(
    c: *const DfMatrix,
    x: *const f64,
    n: usize,
    out: *mut f64,
) -> DfStatus {
    guard(|| write_vec(out, n, &modified_step(&simplex(x, n)?, matrix(c)?)?))
}

#[no_mangle]
pub unsafe extern "C" fn df_original_step(
    c: *const DfMatrix,
    x: *const f64,
    n: usize,
    out: *mut f64,
) -> DfStatus {
    guard(|| write_vec(out, n, &original_df_step(&simplex(x, n)?, matrix(c)?)?))
}

#[no_mangle]
pub unsafe extern "C" fn df_finite_t_step(
    c: *const DfMatrix,
    x: *const f64,
    n: usize,
    t_steps: u32,
    out: *mut f64,
) -> DfStatus {
    guard(|| {
        write_vec(
            out,
            n,
            &finite_t_step(&simplex(x, n)?, matrix(c)?, t_steps)?,
        )
    })
}

/// Sup-norm residual of the Modified map at `x`.
#[no_mangle]
pub unsafe extern "C" fn df_verify_equilibrium(
    c: *const DfMatrix,
    x: *const f64,
    n: usize,
    residual: *mut f64,
) -> DfStatus {
    guard(|| write_out(residual, verify_equilibrium(&simplex(x, n)?, matrix(c)?)?))
}

/// Roots of `x - x^2 = a (n-1) / n^2`.
#[no_mangle]
pub unsafe extern "C" fn df_quadratic_roots(
    a: f64,
    n: usize,
    low: *mut f64,
    high: *mut f64,
) -> DfStatus {
    guard(|| {
        let (lo, hi) = quadratic_roots(a, n)?;
        write_out(low, lo)?;
        write_out(high, hi)
    })
}

/// Runs a model from `x0`. `model` is a `DfModel` code; `t_steps` is only
/// read for `DF_MODEL_FINITE_T`. A run that hits `max_issues` still returns
/// `DF_STATUS_OK`; check `df_trajectory_converged`.
#[no_mangle]
pub unsafe extern "C" fn df_simulate(
    c: *const DfMatrix,
    x0: *const f64,
    n: usize,
    model: u32,
    t_steps: u32,
    max_issues: usize,
    stop_tol: f64,
    out: *mut *mut DfTrajectory,
) -> DfStatus {
    guard(|| {
        let model = match model {
            m if m == DfModel::Modified as u32 => ModelKind::Modified,
            m if m == DfModel::Original as u32 => ModelKind::Original,
            m if m == DfModel::FiniteT as u32 => ModelKind::FiniteT(t_steps),
            other => {
                return Err(Failure(
                    DfStatus::InvalidInput,
                    format!("unknown model code {other}"),
                ))
            }
        };
        let traj = simulate(model, matrix(c)?, &simplex(x0, n)?, max_issues, stop_tol)?;
        write_out(out, Box::into_raw(Box::new(DfTrajectory(traj))))
    })
}

/// Runs a named preset (for example `ring-fig5`) with the Modified map.
#[no_mangle]
pub unsafe extern "C" fn df_preset_run(
    name: *const c_char,
    max_issues: usize,
    stop_tol: f64,
    out: *mut *mut DfTrajectory,
) -> DfStatus {
    guard(|| {
        let (traj, _) = run_preset_with(c_str(name, "name")?, max_issues, stop_tol)?;
        write_out(out, Box::into_raw(Box::new(DfTrajectory(traj))))
    })
}

/// Number of recorded states (issues + 1); 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn df_trajectory_len(t: *const DfTrajectory) -> usize {
    t.as_ref().map_or(0, |t| t.0.states().len())
}

/// Dimension of the states; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn df_trajectory_n(t: *const DfTrajectory) -> usize {
    t.as_ref().map_or(0, |t| t.0.n())
}

#[no_mangle]
pub unsafe extern "C" fn df_trajectory_converged(t: *const DfTrajectory) -> bool {
    t.as_ref().is_some_and(|t| t.0.converged())
}

/// Copies state `issue` into `out` (`n` doubles).
#[no_mangle]
pub unsafe extern "C" fn df_trajectory_state(
    t: *const DfTrajectory,
    issue: usize,
    out: *mut f64,
    n: usize,
) -> DfStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trajectory"))?;
        let x = t.0.states().get(issue).ok_or_else(|| {
            Failure(
                DfStatus::InvalidInput,
                format!("issue {issue} out of range"),
            )
        })?;
        write_vec(out, n, x)
    })
}

#[no_mangle]
pub unsafe extern "C" fn df_trajectory_free(t: *mut DfTrajectory) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Convergence and monotonicity verdicts; the limit is the last state.
#[no_mangle]
pub unsafe extern "C" fn df_analyze(
    t: *const DfTrajectory,
    c: *const DfMatrix,
    out: *mut DfReport,
) -> DfStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trajectory"))?;
        let r = analyze_trajectory(&t.0, matrix(c)?)?;
        write_out(
            out,
            DfReport {
                converged: r.converged,
                issues_used: r.issues_used,
                final_residual: r.final_residual,
                min_monotone: r.min_monotone,
                max_monotone: r.max_monotone,
                lyapunov_nonincreasing: r.lyapunov_nonincreasing,
                n2_warning: r.n2_warning,
            },
        )
    })
}
