//! Parametric LCP projection.
//!
//! Penalizing the budget with a multiplier `lambda` leaves an isotonic
//! projection whose dual `z(lambda)` solves `LCP(q + lambda d, M)` with
//! `M = D D^T` tridiagonal `(−1, 2, −1)`, `q = D x0 >= 0` and `d = −e_k`.
//! `z` is nondecreasing in `lambda`, so the optimal basis grows one index at a
//! time as `lambda` increases and stays a contiguous window `a..=b` around `k`.
//! Only the three dual entries at `a`, `k` and `b` are tracked; the inverse of
//! `M` restricted to the window has a closed form, which makes every pivot
//! O(1). The primal point is rebuilt once at the end in O(b − a).
//!
//! Positions in this module are 1-based to match the basis bookkeeping.

use crate::error::{Error, Result};
use crate::esgs::check_engine_input;
use crate::scalar::Scalar;
use crate::types::{ProjectionResult, Solver};

/// Entry `(i, j)` of the inverse of the `m x m` tridiagonal `(−1, 2, −1)`
/// matrix: `(m + 1 − max(i, j)) · min(i, j) / (m + 1)`.
#[inline]
pub fn minv<T: Scalar>(m: usize, i: usize, j: usize) -> T {
    debug_assert!(1 <= i && i <= m && 1 <= j && j <= m);
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    T::of((m + 1 - hi) * lo) / T::of(m + 1)
}

/// Consecutive difference `q_j = values[j] − values[j+1]` (1-based).
#[inline]
fn gap<T: Scalar>(values: &[T], j: usize) -> T {
    values[j - 1] - values[j]
}

/// Basis window and the tracked entries of `z(0)` on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PivotState<T> {
    pub a: usize,
    pub b: usize,
    /// Position of `k` inside the window, counted from 1.
    pub pos_k: usize,
    pub z_a: T,
    pub z_k: T,
    pub z_b: T,
    /// Schur complement scalar `(m + 2) / (m + 1)`, `m = b − a + 1`.
    pub sigma: T,
    pub s0: T,
    /// Pivots performed so far (equals the window size).
    pub t: usize,
}

impl<T: Scalar> PivotState<T> {
    pub fn size(&self) -> usize {
        self.b - self.a + 1
    }

    pub fn pos_b(&self) -> usize {
        self.size()
    }

    fn minv(&self, i: usize, j: usize) -> T {
        minv(self.size(), i, j)
    }
}

/// Per-pivot record used by tests to check the internals.
#[derive(Debug, Clone, Default)]
pub struct PlcpTrace<T> {
    /// Breakpoint at which each test `T <= r` was evaluated, in order.
    pub breakpoints: Vec<T>,
    /// State after seeding and after every subsequent pivot.
    pub states: Vec<PivotState<T>>,
}

/// Projects a nonincreasing vector with `top_k_sum > r` and `1 < k < n`.
pub fn project_sorted_plcp<T: Scalar>(values: &[T], k: usize, r: T) -> Result<ProjectionResult<T>> {
    run(values, k, r, None)
}

/// Same as [`project_sorted_plcp`] but also records every breakpoint and basis.
pub fn trace_plcp<T: Scalar>(values: &[T], k: usize, r: T) -> Result<(ProjectionResult<T>, PlcpTrace<T>)> {
    let mut trace = PlcpTrace {
        breakpoints: Vec::new(),
        states: Vec::new(),
    };
    let res = run(values, k, r, Some(&mut trace))?;
    Ok((res, trace))
}

fn run<T: Scalar>(
    values: &[T],
    k: usize,
    r: T,
    mut trace: Option<&mut PlcpTrace<T>>,
) -> Result<ProjectionResult<T>> {
    check_engine_input(values, k)?;
    debug_assert!(crate::sorting::is_sorted_desc(values));
    let n = values.len();
    let kf = T::of(k);
    let s0 = values[..k].iter().fold(T::zero(), |acc, &v| acc + v);
    if s0 <= r {
        return Err(Error::arg("input is feasible; nothing to project"));
    }

    // Iteration 0: empty basis, x(lambda) = values − lambda 1_k up to lambda = q_k.
    let q_k = gap(values, k);
    if let Some(t) = trace.as_deref_mut() {
        t.breakpoints.push(q_k);
    }
    // Strict: on equality the solution already has a tie at k + 1, which the
    // first pivot reports in the index pair.
    if s0 - kf * q_k < r {
        let lambda = (s0 - r) / kf;
        let mut x = values.to_vec();
        for v in &mut x[..k] {
            *v = *v - lambda;
        }
        let (k0, k1) = recover_index_pair(values, k, k, k, true);
        return Ok(ProjectionResult {
            x,
            lambda,
            theta: Some(values[k - 1] - lambda),
            k0,
            k1,
            iterations: 0,
            method: Solver::Plcp,
        });
    }

    let half = minv::<T>(1, 1, 1);
    let z0 = T::zero() - q_k * half;
    let mut st = PivotState {
        a: k,
        b: k,
        pos_k: 1,
        z_a: z0,
        z_k: z0,
        z_b: z0,
        sigma: T::of(3) / T::of(2),
        s0,
        t: 1,
    };
    if let Some(t) = trace.as_deref_mut() {
        t.states.push(st);
    }

    loop {
        let pos_b = st.pos_b();
        // Next breakpoint: the complementary slack just outside either edge
        // of the window reaches zero.
        let left = (st.a > 1).then(|| (gap(values, st.a - 1) - st.z_a) / st.minv(st.pos_k, 1));
        let right = (st.b + 1 < n).then(|| (gap(values, st.b + 1) - st.z_b) / st.minv(st.pos_k, pos_b));
        let mkk = st.minv(st.pos_k, st.pos_k);
        let grow_left = match (left, right) {
            (None, None) => None,
            (Some(_), None) => Some(true),
            (None, Some(_)) => Some(false),
            (Some(l), Some(rt)) => Some(l <= rt),
        };

        let solved = match grow_left {
            // Full basis: the budget is met somewhere on the final ray.
            None => true,
            Some(gl) => {
                let lambda = if gl { left.unwrap() } else { right.unwrap() };
                if let Some(t) = trace.as_deref_mut() {
                    t.breakpoints.push(lambda);
                }
                // top_k_sum of x(lambda) telescopes to s0 − k lambda + z_k(lambda).
                // Strict for the same reason as iteration 0: a budget met
                // exactly at a breakpoint means the tie there is part of the
                // plateau, so the pivot is still taken.
                s0 - kf * lambda + st.z_k + mkk * lambda < r
            }
        };

        if solved {
            let lambda = (s0 - r + st.z_k) / (kf - mkk);
            let mut x = values.to_vec();
            for v in &mut x[..k] {
                *v = *v - lambda;
            }
            apply_dtz(&mut x, values, st.a, st.b, st.pos_k, lambda);
            let (k0, k1) = recover_index_pair(values, k, st.a, st.b, false);
            let theta = x[k - 1];
            return Ok(ProjectionResult {
                x,
                lambda,
                theta: Some(theta),
                k0,
                k1,
                iterations: st.t,
                method: Solver::Plcp,
            });
        }

        if st.t >= n - 1 {
            return Err(Error::invariant(format!(
                "parametric pivoting exhausted all {} pivots without meeting the budget",
                n - 1
            )));
        }

        // Schur complement update of z(0) for the enlarged window.
        if grow_left == Some(true) {
            let z_new = (st.z_a - gap(values, st.a - 1)) / st.sigma;
            st.z_k = st.z_k + z_new * st.minv(st.pos_k, 1);
            st.z_b = st.z_b + z_new * st.minv(pos_b, 1);
            st.z_a = z_new;
            st.a -= 1;
            st.pos_k += 1;
        } else {
            let z_new = (st.z_b - gap(values, st.b + 1)) / st.sigma;
            st.z_a = st.z_a + z_new * st.minv(1, pos_b);
            st.z_k = st.z_k + z_new * st.minv(st.pos_k, pos_b);
            st.z_b = z_new;
            st.b += 1;
        }
        st.t += 1;
        let m = st.size();
        st.sigma = T::of(m + 2) / T::of(m + 1);
        if let Some(t) = trace.as_deref_mut() {
            t.states.push(st);
        }
    }
}

/// Adds `D^T z(lambda)` restricted to the window `a..=b` into `y`, where
/// `z(lambda) = M^{-1}(−q + lambda e_{pos_k})` on the window.
///
/// Two passes: a reverse weighted cumulative sum gives the first dual entry,
/// then a forward pass of differences gives each successive entry of
/// `D^T z`. Cost is O(b − a).
pub fn apply_dtz<T: Scalar>(y: &mut [T], values: &[T], a: usize, b: usize, pos_k: usize, lambda: T) {
    debug_assert!(1 <= a && a <= b && b < values.len() && y.len() == values.len());
    let m = b - a + 1;
    debug_assert!(1 <= pos_k && pos_k <= m);
    let rhs = |p: usize| {
        let v = T::zero() - gap(values, a + p - 1);
        if p == pos_k {
            v + lambda
        } else {
            v
        }
    };

    let mut c = T::zero();
    for i in 1..=m {
        c = c + T::of(i) * rhs(m - i + 1);
    }
    c = c / T::of(m + 1);
    y[a - 1] = y[a - 1] + c;

    for p in 1..=m {
        c = c - rhs(p);
        y[a + p - 1] = y[a + p - 1] + c;
    }
}

/// Index pair implied by the final basis window. When the budget is met
/// before the first pivot the plateau is the run of head entries tied with
/// `values[k]`.
pub fn recover_index_pair<T: Scalar>(values: &[T], k: usize, a: usize, b: usize, solved_at_init: bool) -> (usize, usize) {
    if solved_at_init {
        let mut k0 = k - 1;
        while k0 > 0 && values[k0 - 1] == values[k - 1] {
            k0 -= 1;
        }
        (k0, k)
    } else {
        (a.saturating_sub(1), (b + 1).min(values.len()))
    }
}
