//! Dispatch: closed-form cases, then sort, run a sorted engine and scatter the
//! result back to input order.

use std::time::Instant;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::sorting::{select_top_k, sort_desc};
use crate::types::{Method, ProjectionInstance, ProjectionResult, Solver, Tolerances};
use crate::{esgs, grid, plcp};

/// Closed-form projections. Returns `None` when a sorted engine is needed.
///
/// Handles, in order: an already feasible input, `k = 1` (clip at `r`) and
/// `k = n` (uniform shift). Works on unsorted input in O(n).
pub fn project_trivial<T: Scalar>(inst: &ProjectionInstance<T>) -> Option<ProjectionResult<T>> {
    project_trivial_tol(inst, T::zero())
}

pub(crate) fn project_trivial_tol<T: Scalar>(
    inst: &ProjectionInstance<T>,
    feas_tol: T,
) -> Option<ProjectionResult<T>> {
    let (x0, k, r) = (inst.x0(), inst.k(), inst.r());
    let (sum, kth) = select_top_k(x0, k);
    if sum <= r + feas_tol {
        let k0 = x0.iter().filter(|&&v| v > kth).count();
        let k1 = x0.iter().filter(|&&v| v >= kth).count();
        return Some(unchanged(x0, k0, k1));
    }
    clip_or_shift(x0, k, r)
}

pub(crate) fn unchanged<T: Scalar>(x0: &[T], k0: usize, k1: usize) -> ProjectionResult<T> {
    ProjectionResult {
        x: x0.to_vec(),
        lambda: T::zero(),
        theta: None,
        k0,
        k1,
        iterations: 0,
        method: Solver::Trivial,
    }
}

/// The `k = 1` and `k = n` closed forms for an infeasible input.
fn clip_or_shift<T: Scalar>(x0: &[T], k: usize, r: T) -> Option<ProjectionResult<T>> {
    let n = x0.len();
    if k == 1 {
        let mut lambda = T::zero();
        let mut k1 = 0;
        let x = x0
            .iter()
            .map(|&v| {
                if v >= r {
                    lambda = lambda + (v - r);
                    k1 += 1;
                    r
                } else {
                    v
                }
            })
            .collect();
        return Some(ProjectionResult {
            x,
            lambda,
            theta: Some(r),
            k0: 0,
            k1,
            iterations: 0,
            method: Solver::Trivial,
        });
    }
    if k == n {
        let total = x0.iter().fold(T::zero(), |acc, &v| acc + v);
        let shift = (total - r) / T::of(n);
        let x: Vec<T> = x0.iter().map(|&v| v - shift).collect();
        let floor = x.iter().copied().fold(x[0], T::min_of);
        let k0 = x.iter().filter(|&&v| v > floor).count();
        return Some(ProjectionResult {
            x,
            lambda: shift,
            theta: Some(floor),
            k0,
            k1: n,
            iterations: 0,
            method: Solver::Trivial,
        });
    }
    None
}

/// Runs one sorted engine. `values` must be nonincreasing.
///
/// Unlike the engines themselves this also accepts feasible inputs and the
/// `k = 1`, `k = n` cases.
pub fn solve_sorted<T: Scalar>(values: &[T], k: usize, r: T, method: Method) -> Result<ProjectionResult<T>> {
    solve_sorted_until(values, k, r, method, None)
}

/// [`solve_sorted`] with a wall-clock deadline. Only the grid search is slow
/// enough to check it; the linear-time engines ignore it.
pub fn solve_sorted_until<T: Scalar>(
    values: &[T],
    k: usize,
    r: T,
    method: Method,
    deadline: Option<Instant>,
) -> Result<ProjectionResult<T>> {
    if k == 0 || k > values.len() {
        return Err(crate::Error::InvalidArgument(format!(
            "k = {k} outside 1..={}",
            values.len()
        )));
    }
    let head = values[..k].iter().fold(T::zero(), |acc, &v| acc + v);
    if head <= r {
        let (k0, k1) = crate::sorting::find_index_pair(values, k)?;
        return Ok(unchanged(values, k0, k1));
    }
    if let Some(res) = clip_or_shift(values, k, r) {
        return Ok(res);
    }
    match method {
        Method::Grid => grid::project_sorted_grid_until(values, k, r, deadline),
        _ => run_engine(values, k, r, method),
    }
}

pub(crate) fn run_engine<T: Scalar>(values: &[T], k: usize, r: T, method: Method) -> Result<ProjectionResult<T>> {
    match method {
        Method::Esgs => esgs::project_sorted_esgs(values, k, r),
        Method::Plcp => plcp::project_sorted_plcp(values, k, r),
        Method::Grid => grid::project_sorted_grid(values, k, r),
    }
}

/// Projects `inst.x0` onto `{x : sum of k largest entries <= r}`.
///
/// The sorted problem has a solution with the same ordering as the input, so
/// it is solved on the nonincreasing rearrangement and scattered back.
pub fn project<T: Scalar>(
    inst: &ProjectionInstance<T>,
    method: Method,
    tol: &Tolerances,
) -> Result<ProjectionResult<T>> {
    let feas_tol = T::from_f64(tol.feas_tol).unwrap_or_else(T::zero);
    if let Some(res) = project_trivial_tol(inst, feas_tol) {
        return Ok(res);
    }
    let view = sort_desc(inst.x0())?;
    // The selection sum and the sorted prefix sum can round differently, so
    // feasibility is decided again on the sorted values the engines will see.
    let mut res = solve_sorted(&view.values, inst.k(), inst.r(), method)?;
    res.x = view.unpermute(&res.x);
    Ok(res)
}
