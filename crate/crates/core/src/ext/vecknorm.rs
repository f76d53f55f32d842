//! Projection onto `{z : sum of the k largest |z_i| <= r}`.
//!
//! The projection keeps signs and the order of magnitudes, so it suffices to
//! solve the sorted nonnegative problem on `v = |z0|` sorted nonincreasing:
//! the isotonic chain gains the extra row `z_n >= 0`. With `E = [D; e_n^T]`
//! the dual solves `LCP(q + lambda d, E E^T)`, where `q = E v`, `d = −e_k`
//! and `E E^T` is the `(−1, 2, −1)` tridiagonal matrix with its last diagonal
//! entry replaced by 1. The same window pivoting as the top-k-sum engine
//! applies; only the inverse on a window touching index `n` changes, to
//! `min(i, j)`.
//!
//! Positions are 1-based, as in [`crate::plcp`].

use crate::error::{Error, Result};
use crate::plcp::minv;
use crate::sorting::{select_top_k, sort_desc};
use crate::types::{ProjectionResult, Solver};

/// `q_j` of the extended chain: consecutive gaps, then `v_n` itself.
#[inline]
fn gap(v: &[f64], j: usize) -> f64 {
    if j == v.len() {
        v[j - 1]
    } else {
        v[j - 1] - v[j]
    }
}

#[derive(Debug, Clone, Copy)]
struct Window {
    a: usize,
    b: usize,
    pos_k: usize,
    /// Whether `b == n`, i.e. the window includes the nonnegativity row.
    tail: bool,
}

impl Window {
    fn size(&self) -> usize {
        self.b - self.a + 1
    }

    fn inv(&self, i: usize, j: usize) -> f64 {
        if self.tail {
            i.min(j) as f64
        } else {
            minv(self.size(), i, j)
        }
    }
}

/// Projects `z0` onto the ball of radius `r` of the sum of its `k` largest
/// absolute values.
pub fn project_vector_k_norm(z0: &[f64], k: usize, r: f64) -> Result<ProjectionResult> {
    let n = z0.len();
    if n == 0 {
        return Err(Error::arg("input vector is empty"));
    }
    if k == 0 || k > n {
        return Err(Error::arg(format!("k = {k} outside 1..={n}")));
    }
    if !(r >= 0.0) {
        return Err(Error::arg(format!("radius r = {r} must be nonnegative")));
    }
    let mag: Vec<f64> = z0.iter().map(|v| v.abs()).collect();
    if let Some(i) = mag.iter().position(|v| v.is_nan()) {
        return Err(Error::arg(format!("z0[{i}] is NaN")));
    }
    let (norm, kth) = select_top_k(&mag, k);
    if norm <= r {
        return Ok(ProjectionResult {
            x: z0.to_vec(),
            lambda: 0.0,
            theta: None,
            k0: mag.iter().filter(|&&v| v > kth).count(),
            k1: mag.iter().filter(|&&v| v >= kth).count(),
            iterations: 0,
            method: Solver::Trivial,
        });
    }
    let view = sort_desc(&mag)?;
    let mut res = solve_sorted_nonneg(&view.values, k, r)?;
    for z in &mut res.x {
        *z = z.max(0.0);
    }
    let mut x = view.unpermute(&res.x);
    for (xi, &zi) in x.iter_mut().zip(z0) {
        if zi < 0.0 {
            *xi = -*xi;
        }
    }
    res.x = x;
    Ok(res)
}

fn solve_sorted_nonneg(v: &[f64], k: usize, r: f64) -> Result<ProjectionResult> {
    let n = v.len();
    let kf = k as f64;
    let s0: f64 = v[..k].iter().sum();
    let zero = |iterations| ProjectionResult {
        x: vec![0.0; n],
        lambda: v[0],
        theta: Some(0.0),
        k0: 0,
        k1: n,
        iterations,
        method: Solver::Plcp,
    };
    if r == 0.0 {
        return Ok(zero(0));
    }

    let q_k = gap(v, k);
    // Strict: on equality the solution already has a tie at k + 1, which the
    // first pivot reports in the index pair.
    if s0 - kf * q_k < r {
        let lambda = (s0 - r) / kf;
        let mut x = v.to_vec();
        for xi in &mut x[..k] {
            *xi -= lambda;
        }
        return Ok(ProjectionResult {
            theta: Some(x[k - 1]),
            x,
            lambda,
            k0: k - 1,
            k1: k,
            iterations: 0,
            method: Solver::Plcp,
        });
    }

    let mut w = Window {
        a: k,
        b: k,
        pos_k: 1,
        tail: k == n,
    };
    let seed = -q_k * w.inv(1, 1);
    let (mut z_a, mut z_k, mut z_b) = (seed, seed, seed);
    let mut pivots = 1;
    loop {
        let m = w.size();
        let left = (w.a > 1).then(|| (gap(v, w.a - 1) - z_a) / w.inv(w.pos_k, 1));
        let right = (w.b < n).then(|| (gap(v, w.b + 1) - z_b) / w.inv(w.pos_k, m));
        let mkk = w.inv(w.pos_k, w.pos_k);
        let grow_left = match (left, right) {
            (None, None) => None,
            (Some(_), None) => Some(true),
            (None, Some(_)) => Some(false),
            (Some(l), Some(rt)) => Some(l <= rt),
        };
        let solved = match grow_left {
            None => true,
            Some(gl) => {
                let lambda = if gl { left.unwrap() } else { right.unwrap() };
                s0 - kf * lambda + z_k + mkk * lambda <= r
            }
        };

        if solved {
            let denom = kf - mkk;
            // A window whose budget is flat in lambda can only be reached
            // when rounding pushed a zero-radius solve past its breakpoint.
            if !(denom > 0.0) {
                return Ok(zero(pivots));
            }
            let lambda = (s0 - r + z_k) / denom;
            let x = reconstruct(v, k, w, lambda);
            let (k0, k1) = (w.a - 1, (w.b + 1).min(n));
            return Ok(ProjectionResult {
                theta: Some(x[k - 1]),
                x,
                lambda,
                k0,
                k1,
                iterations: pivots,
                method: Solver::Plcp,
            });
        }
        if pivots >= n {
            return Err(Error::invariant(format!(
                "parametric pivoting exhausted all {n} pivots without meeting the radius"
            )));
        }

        if grow_left == Some(true) {
            let j = w.a - 1;
            let sigma = 2.0 - w.inv(1, 1);
            let z_new = (z_a - gap(v, j)) / sigma;
            z_k += z_new * w.inv(w.pos_k, 1);
            z_b += z_new * w.inv(m, 1);
            z_a = z_new;
            w.a -= 1;
            w.pos_k += 1;
        } else {
            let j = w.b + 1;
            let sigma = if j == n { 1.0 } else { 2.0 } - w.inv(m, m);
            let z_new = (z_b - gap(v, j)) / sigma;
            z_a += z_new * w.inv(1, m);
            z_k += z_new * w.inv(w.pos_k, m);
            z_b = z_new;
            w.b += 1;
            w.tail = w.b == n;
        }
        pivots += 1;
    }
}

/// `v − lambda 1_k + E^T mu`, with `mu` on the window from a tridiagonal
/// solve of `M mu = −q + lambda e_k`.
fn reconstruct(v: &[f64], k: usize, w: Window, lambda: f64) -> Vec<f64> {
    let n = v.len();
    let m = w.size();
    let rhs: Vec<f64> = (0..m)
        .map(|p| {
            let j = w.a + p;
            let e = if j == k { lambda } else { 0.0 };
            e - gap(v, j)
        })
        .collect();
    let diag: Vec<f64> = (0..m).map(|p| if w.a + p == n { 1.0 } else { 2.0 }).collect();
    let mu = solve_tridiagonal(&diag, -1.0, &rhs);

    let mut x = v.to_vec();
    for xi in &mut x[..k] {
        *xi -= lambda;
    }
    for (p, &m_p) in mu.iter().enumerate() {
        let j = w.a + p;
        x[j - 1] += m_p;
        if j < n {
            x[j] -= m_p;
        }
    }
    x
}

/// Thomas algorithm for a symmetric tridiagonal system with constant
/// off-diagonal.
fn solve_tridiagonal(diag: &[f64], off: f64, rhs: &[f64]) -> Vec<f64> {
    let m = diag.len();
    let mut c = vec![0.0; m];
    let mut d = vec![0.0; m];
    c[0] = off / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..m {
        let denom = diag[i] - off * c[i - 1];
        c[i] = off / denom;
        d[i] = (rhs[i] - off * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; m];
    x[m - 1] = d[m - 1];
    for i in (0..m - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}
