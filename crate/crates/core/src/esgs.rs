//! Early-stopping grid search over index pairs.
//!
//! Every index pair `(k0, k1)` with `0 <= k0 < k <= k1 <= n` determines a
//! candidate solution through a 2x2 linear system in the plateau value and the
//! multiplier. The walk starts at `(k - 1, k)` and only ever decrements `k0` or
//! increments `k1`, so it visits at most `n` pairs.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{ProjectionResult, Solver};

/// Sums of the sorted input over the head block `1..=k0` and the plateau block
/// `k0+1..=k1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockSums<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> BlockSums<T> {
    /// Fresh sums, computed directly from the sorted values.
    pub fn from_values(values: &[T], k0: usize, k1: usize) -> Self {
        let sum = |s: &[T]| s.iter().fold(T::zero(), |acc, &v| acc + v);
        BlockSums {
            alpha: sum(&values[..k0]),
            beta: sum(&values[k0..k1]),
        }
    }
}

/// Candidate plateau value and multiplier for one index pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate<T> {
    pub k0: usize,
    pub k1: usize,
    pub rho: T,
    pub theta: T,
    pub lambda: T,
    /// Evaluated from its own closed form rather than as `theta + lambda`.
    pub theta_plus_lambda: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KktFlags {
    pub kkt1: bool,
    pub kkt2: bool,
    pub kkt3: bool,
    pub kkt4: bool,
    pub kkt5: bool,
}

impl KktFlags {
    pub fn all(self) -> bool {
        self.kkt1 && self.kkt2 && self.kkt3 && self.kkt4 && self.kkt5
    }
}

/// Solves the 2x2 system for the pair `(k0, k1)`.
///
/// `rho = k0 (k1 - k0) + (k - k0)^2` is positive on the whole valid grid.
pub fn candidate_solution<T: Scalar>(
    k: usize,
    r: T,
    k0: usize,
    k1: usize,
    sums: BlockSums<T>,
) -> Candidate<T> {
    debug_assert!(k0 < k && k <= k1);
    let (kf, k0f, k1f) = (T::of(k), T::of(k0), T::of(k1));
    let head = sums.alpha - r;
    let rho = k0f * (k1f - k0f) + (kf - k0f) * (kf - k0f);
    let theta = (k0f * sums.beta - (kf - k0f) * head) / rho;
    let lambda = ((kf - k0f) * sums.beta + (k1f - k0f) * head) / rho;
    // At k1 = k, rho = k (k − k0) and the closed form reduces to the plateau
    // mean. Evaluating the reduced form keeps condition 3 exact at (k − 1, k),
    // where it always holds with equality.
    let theta_plus_lambda = if k1 == k {
        sums.beta / (kf - k0f)
    } else {
        (kf * sums.beta + (k1f - kf) * head) / rho
    };
    Candidate {
        k0,
        k1,
        rho,
        theta,
        lambda,
        theta_plus_lambda,
    }
}

/// Condition 2: `values[k0] > theta + lambda`, true at `k0 = 0`.
#[inline]
fn kkt2<T: Scalar>(values: &[T], c: &Candidate<T>) -> bool {
    c.k0 == 0 || values[c.k0 - 1] > c.theta_plus_lambda
}

/// Condition 5: `theta > values[k1 + 1]`, true at `k1 = n`.
#[inline]
fn kkt5<T: Scalar>(values: &[T], c: &Candidate<T>) -> bool {
    c.k1 == values.len() || c.theta > values[c.k1]
}

/// The five optimality indicators of a candidate, with `values[0] = +inf` and
/// `values[n+1] = -inf` as sentinels (1-based).
pub fn kkt_flags<T: Scalar>(values: &[T], c: &Candidate<T>) -> KktFlags {
    KktFlags {
        kkt1: c.lambda > T::zero(),
        kkt2: kkt2(values, c),
        kkt3: c.theta_plus_lambda >= values[c.k0],
        kkt4: values[c.k1 - 1] >= c.theta,
        kkt5: kkt5(values, c),
    }
}

pub(crate) fn check_engine_input<T: Scalar>(values: &[T], k: usize) -> Result<()> {
    let n = values.len();
    if n < 3 || k <= 1 || k >= n {
        return Err(Error::arg(format!(
            "sorted engines need 1 < k < n (got k = {k}, n = {n}); use project() for the closed-form cases"
        )));
    }
    Ok(())
}

/// Outcome of a (possibly capped) walk.
pub(crate) enum Walk<T> {
    Done(ProjectionResult<T>),
    /// The walk needed `k1` beyond the cap.
    Capped,
}

/// Projects a nonincreasing vector with `top_k_sum > r` and `1 < k < n`.
pub fn project_sorted_esgs<T: Scalar>(values: &[T], k: usize, r: T) -> Result<ProjectionResult<T>> {
    check_engine_input(values, k)?;
    debug_assert!(crate::sorting::is_sorted_desc(values));
    match walk(values, k, r, values.len())? {
        Walk::Done(res) => Ok(res),
        Walk::Capped => unreachable!("uncapped walk cannot stop at the cap"),
    }
}

/// Runs the walk without letting `k1` exceed `k1_cap`. Only
/// `values[..=k1_cap]` is read, so entries past the cap may be unsorted.
pub(crate) fn walk<T: Scalar>(values: &[T], k: usize, r: T, k1_cap: usize) -> Result<Walk<T>> {
    walk_observed(values, k, r, k1_cap, |_| {})
}

/// Every candidate visited by the walk, in order, with its five indicators.
/// Same preconditions as [`project_sorted_esgs`].
pub fn trace_esgs<T: Scalar>(
    values: &[T],
    k: usize,
    r: T,
) -> Result<(ProjectionResult<T>, Vec<(Candidate<T>, KktFlags)>)> {
    check_engine_input(values, k)?;
    let mut visited = Vec::new();
    let walk = walk_observed(values, k, r, values.len(), |c| {
        visited.push((*c, kkt_flags(values, c)))
    })?;
    match walk {
        Walk::Done(res) => Ok((res, visited)),
        Walk::Capped => unreachable!("uncapped walk cannot stop at the cap"),
    }
}

fn walk_observed<T: Scalar>(
    values: &[T],
    k: usize,
    r: T,
    k1_cap: usize,
    mut observe: impl FnMut(&Candidate<T>),
) -> Result<Walk<T>> {
    let n = values.len();
    let mut k0 = k - 1;
    let mut k1 = k;
    let mut sums = BlockSums {
        alpha: values[..k - 1].iter().fold(T::zero(), |acc, &v| acc + v),
        beta: values[k - 1],
    };
    if sums.alpha + sums.beta <= r {
        return Err(Error::arg("input is feasible; nothing to project"));
    }

    let mut evaluations = 0usize;
    let cand = loop {
        evaluations += 1;
        let c = candidate_solution(k, r, k0, k1, sums);
        observe(&c);
        let (ok2, ok5) = (kkt2(values, &c), kkt5(values, &c));
        if ok2 && ok5 {
            break c;
        } else if ok2 {
            if k1 >= k1_cap {
                return Ok(Walk::Capped);
            }
            sums.beta = sums.beta + values[k1];
            k1 += 1;
        } else {
            k0 -= 1;
            sums.alpha = sums.alpha - values[k0];
            sums.beta = sums.beta + values[k0];
        }
        if evaluations > n {
            return Err(Error::invariant(format!(
                "early-stopping search exceeded {n} steps"
            )));
        }
    };

    Ok(Walk::Done(assemble(values, cand, evaluations, Solver::Esgs)))
}

/// Builds the primal point of a candidate: head shifted by the multiplier,
/// plateau flattened, tail untouched.
pub(crate) fn assemble<T: Scalar>(
    values: &[T],
    c: Candidate<T>,
    iterations: usize,
    method: Solver,
) -> ProjectionResult<T> {
    let lambda = c.theta_plus_lambda - c.theta;
    let mut x = values.to_vec();
    for v in &mut x[..c.k0] {
        *v = *v - lambda;
    }
    for v in &mut x[c.k0..c.k1] {
        *v = c.theta;
    }
    ProjectionResult {
        x,
        lambda,
        theta: Some(c.theta),
        k0: c.k0,
        k1: c.k1,
        iterations,
        method,
    }
}
