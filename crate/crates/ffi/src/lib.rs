//! C ABI for the `topksum` projection library.
//!
//! Every solve returns a [`TksStatus`] and hands out an opaque [`TksResult`]
//! that must be released with [`tks_result_free`]. Vectors are passed as a
//! pointer and a length and are never retained. Panics are caught at the
//! boundary and reported as [`TksStatus::Panic`].

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use topksum::{
    project, project_partial_sort, project_vector_k_norm, support_function, top_k_sum, Error, Method,
    PartialSortHint, ProjectionInstance, ProjectionResult, Solver, Tolerances,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TksStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The solver detected an internal inconsistency.
    Internal = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

/// Engine selector, passed as a plain integer so that out-of-range values
/// from C are rejected rather than undefined.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TksMethod {
    Esgs = 0,
    Plcp = 1,
    Grid = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TksSolver {
    Esgs = 0,
    Plcp = 1,
    Grid = 2,
    Trivial = 3,
}

/// Opaque projection result.
pub struct TksResult {
    inner: ProjectionResult,
}

fn status_of(e: &Error) -> TksStatus {
    match e {
        Error::InvalidArgument(_) => TksStatus::InvalidArgument,
        _ => TksStatus::Internal,
    }
}

fn method_of(m: u32) -> Option<Method> {
    match m {
        0 => Some(Method::Esgs),
        1 => Some(Method::Plcp),
        2 => Some(Method::Grid),
        _ => None,
    }
}

fn guard(f: impl FnOnce() -> TksStatus) -> TksStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(TksStatus::Panic)
}

/// # Safety
/// `x` must point to `n` readable doubles unless `n == 0`.
unsafe fn input<'a>(x: *const f64, n: usize) -> Result<&'a [f64], TksStatus> {
    if x.is_null() {
        return Err(TksStatus::NullPointer);
    }
    if n == 0 {
        return Err(TksStatus::InvalidArgument);
    }
    Ok(slice::from_raw_parts(x, n))
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
unsafe fn deliver(res: topksum::Result<ProjectionResult>, out: *mut *mut TksResult) -> TksStatus {
    match res {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(TksResult { inner }));
            TksStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Projects `x0[0..n]` onto `{x : sum of the k largest entries <= r}`.
///
/// `method` is one of the [`TksMethod`] values. On success `*out` receives a
/// result owned by the caller; on failure `*out` is set to NULL.
///
/// # Safety
/// `x0` must point to `n` readable doubles and `out` to writable storage for
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn tks_project(
    x0: *const f64,
    n: usize,
    k: usize,
    r: f64,
    method: u32,
    out: *mut *mut TksResult,
) -> TksStatus {
    guard(|| {
        if out.is_null() {
            return TksStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let x0 = match input(x0, n) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let Some(method) = method_of(method) else {
            return TksStatus::InvalidArgument;
        };
        let res = ProjectionInstance::finite(x0.to_vec(), k, r)
            .and_then(|inst| project(&inst, method, &Tolerances::default()));
        deliver(res, out)
    })
}

/// Like [`tks_project`] with the early-stopping engine, sorting only the
/// `l` largest entries first and escalating as needed.
///
/// # Safety
/// Same as [`tks_project`].
#[no_mangle]
pub unsafe extern "C" fn tks_project_partial(
    x0: *const f64,
    n: usize,
    k: usize,
    r: f64,
    l: usize,
    out: *mut *mut TksResult,
) -> TksStatus {
    guard(|| {
        if out.is_null() {
            return TksStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let x0 = match input(x0, n) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let res = ProjectionInstance::finite(x0.to_vec(), k, r)
            .and_then(|inst| project_partial_sort(&inst, PartialSortHint::new(l)))
            .map(|(res, _)| res);
        deliver(res, out)
    })
}

/// Projects `z0[0..n]` onto the ball `{z : sum of the k largest |z_i| <= r}`.
///
/// # Safety
/// Same as [`tks_project`].
#[no_mangle]
pub unsafe extern "C" fn tks_project_vector_k_norm(
    z0: *const f64,
    n: usize,
    k: usize,
    r: f64,
    out: *mut *mut TksResult,
) -> TksStatus {
    guard(|| {
        if out.is_null() {
            return TksStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let z0 = match input(z0, n) {
            Ok(x) => x,
            Err(s) => return s,
        };
        if z0.iter().any(|v| !v.is_finite()) || !r.is_finite() {
            return TksStatus::InvalidArgument;
        }
        deliver(project_vector_k_norm(z0, k, r), out)
    })
}

/// Length of the solution vector, 0 for NULL.
///
/// # Safety
/// `res` must be NULL or a live result.
#[no_mangle]
pub unsafe extern "C" fn tks_result_len(res: *const TksResult) -> usize {
    res.as_ref().map_or(0, |r| r.inner.x.len())
}

/// Copies the solution into `buf`, which must hold at least
/// [`tks_result_len`] doubles.
///
/// # Safety
/// `res` must be a live result and `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tks_result_copy_x(res: *const TksResult, buf: *mut f64, len: usize) -> TksStatus {
    let (Some(res), false) = (res.as_ref(), buf.is_null()) else {
        return TksStatus::NullPointer;
    };
    let x = &res.inner.x;
    if len < x.len() {
        return TksStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(x.as_ptr(), buf, x.len());
    TksStatus::Ok
}

/// Multiplier of the budget constraint; NaN for NULL.
///
/// # Safety
/// `res` must be NULL or a live result.
#[no_mangle]
pub unsafe extern "C" fn tks_result_lambda(res: *const TksResult) -> f64 {
    res.as_ref().map_or(f64::NAN, |r| r.inner.lambda)
}

/// Plateau value; NaN when the input was already feasible or for NULL.
///
/// # Safety
/// `res` must be NULL or a live result.
#[no_mangle]
pub unsafe extern "C" fn tks_result_theta(res: *const TksResult) -> f64 {
    res.as_ref().and_then(|r| r.inner.theta).unwrap_or(f64::NAN)
}

/// # Safety
/// `res` must be NULL or a live result.
#[no_mangle]
pub unsafe extern "C" fn tks_result_k0(res: *const TksResult) -> usize {
    res.as_ref().map_or(0, |r| r.inner.k0)
}

/// # Safety
/// `res` must be NULL or a live result.
#[no_mangle]
pub unsafe extern "C" fn tks_result_k1(res: *const TksResult) -> usize {
    res.as_ref().map_or(0, |r| r.inner.k1)
}

/// # Safety
/// `res` must be NULL or a live result.
#[no_mangle]
pub unsafe extern "C" fn tks_result_iterations(res: *const TksResult) -> usize {
    res.as_ref().map_or(0, |r| r.inner.iterations)
}

/// Which path produced the result; `TKS_SOLVER_TRIVIAL` for NULL.
///
/// # Safety
/// `res` must be NULL or a live result.
#[no_mangle]
pub unsafe extern "C" fn tks_result_solver(res: *const TksResult) -> TksSolver {
    match res.as_ref().map(|r| r.inner.method) {
        Some(Solver::Esgs) => TksSolver::Esgs,
        Some(Solver::Plcp) => TksSolver::Plcp,
        Some(Solver::Grid) => TksSolver::Grid,
        Some(Solver::Trivial) | None => TksSolver::Trivial,
    }
}

/// Releases a result. NULL is ignored.
///
/// # Safety
/// `res` must be NULL or a result not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tks_result_free(res: *mut TksResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Sum of the `k` largest entries of `x[0..n]`.
///
/// # Safety
/// `x` must point to `n` readable doubles and `out` to one writable double.
#[no_mangle]
pub unsafe extern "C" fn tks_top_k_sum(x: *const f64, n: usize, k: usize, out: *mut f64) -> TksStatus {
    guard(|| {
        if out.is_null() {
            return TksStatus::NullPointer;
        }
        let x = match input(x, n) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match top_k_sum(x, k) {
            Ok(v) => {
                *out = v;
                TksStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Support function of `{x : top_k_sum(x) <= r}` at `c[0..n]`; writes
/// `+inf` when unbounded.
///
/// # Safety
/// `c` must point to `n` readable doubles and `out` to one writable double.
#[no_mangle]
pub unsafe extern "C" fn tks_support_function(
    c: *const f64,
    n: usize,
    k: usize,
    r: f64,
    out: *mut f64,
) -> TksStatus {
    guard(|| {
        if out.is_null() {
            return TksStatus::NullPointer;
        }
        let c = match input(c, n) {
            Ok(c) => c,
            Err(s) => return s,
        };
        match support_function(c, k, r) {
            Ok(v) => {
                *out = v;
                TksStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn tks_status_message(status: TksStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        TksStatus::Ok => c"ok",
        TksStatus::NullPointer => c"null pointer argument",
        TksStatus::InvalidArgument => c"invalid argument",
        TksStatus::Internal => c"internal solver error",
        TksStatus::BufferTooSmall => c"output buffer too small",
        TksStatus::Panic => c"panic caught at the C boundary",
    };
    msg.as_ptr()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tks_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
