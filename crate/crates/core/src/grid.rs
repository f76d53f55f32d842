//! Full KKT grid search over `{0..k-1} x {k..n}`, the O(k(n − k)) baseline.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::esgs::{assemble, candidate_solution, check_engine_input, kkt_flags, BlockSums};
use crate::scalar::Scalar;
use crate::types::{ProjectionResult, Solver};

/// Projects a nonincreasing vector with `top_k_sum > r` and `1 < k < n`.
///
/// Scans `k1` upward in the outer loop and `k0` downward in the inner loop,
/// stopping at the first pair satisfying all five conditions.
pub fn project_sorted_grid<T: Scalar>(values: &[T], k: usize, r: T) -> Result<ProjectionResult<T>> {
    project_sorted_grid_until(values, k, r, None)
}

/// [`project_sorted_grid`] with an optional wall-clock deadline, checked once
/// per outer column.
pub fn project_sorted_grid_until<T: Scalar>(
    values: &[T],
    k: usize,
    r: T,
    deadline: Option<Instant>,
) -> Result<ProjectionResult<T>> {
    let mut found = None;
    let visited = scan(values, k, r, deadline, |c, visited| {
        found = Some((c, visited));
        false
    })?;
    match found {
        Some((c, v)) => Ok(assemble(values, c, v, Solver::Grid)),
        None => Err(Error::invariant(format!(
            "no index pair satisfied the optimality conditions after {visited} candidates"
        ))),
    }
}

/// Every `(k0, k1)` satisfying all five conditions. The theory says there is
/// exactly one; this keeps scanning after the first hit.
pub fn satisfying_pairs<T: Scalar>(values: &[T], k: usize, r: T) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    scan(values, k, r, None, |c, _| {
        pairs.push((c.k0, c.k1));
        true
    })?;
    Ok(pairs)
}

/// Returns the number of pairs visited. `on_hit` returns whether to continue.
fn scan<T: Scalar>(
    values: &[T],
    k: usize,
    r: T,
    deadline: Option<Instant>,
    mut on_hit: impl FnMut(crate::esgs::Candidate<T>, usize) -> bool,
) -> Result<usize> {
    check_engine_input(values, k)?;
    let n = values.len();
    let head = values[..k - 1].iter().fold(T::zero(), |acc, &v| acc + v);
    if head + values[k - 1] <= r {
        return Err(Error::arg("input is feasible; nothing to project"));
    }

    let mut visited = 0usize;
    // Sum of values[k-1..k1], grown by one entry per column.
    let mut column = values[k - 1];
    for k1 in k..=n {
        if let Some(d) = deadline {
            if Instant::now() >= d {
                return Err(Error::TimedOut {
                    visited: visited as u64,
                });
            }
        }
        let mut sums = BlockSums {
            alpha: head,
            beta: column,
        };
        for k0 in (0..k).rev() {
            visited += 1;
            let c = candidate_solution(k, r, k0, k1, sums);
            if kkt_flags(values, &c).all() && !on_hit(c, visited) {
                return Ok(visited);
            }
            if k0 > 0 {
                sums.alpha = sums.alpha - values[k0 - 1];
                sums.beta = sums.beta + values[k0 - 1];
            }
        }
        if k1 < n {
            column = column + values[k1];
        }
    }
    Ok(visited)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_examples() {
        let res = project_sorted_grid(&[4.0, 3.0, 2.0, 1.0], 2, 5.0).unwrap();
        assert_eq!(res.x, vec![3.0, 2.0, 2.0, 1.0]);
        assert_eq!((res.k0, res.k1), (1, 3));

        let res = project_sorted_grid(&[2.0, 2.0, 1.0], 2, 2.0).unwrap();
        assert_eq!(res.x, vec![1.0, 1.0, 1.0]);
        assert_eq!((res.k0, res.k1), (0, 3));
    }

    #[test]
    fn unique_pair_and_visit_bound() {
        let v: Vec<f64> = (0..20).map(|i| ((i * 37) % 23) as f64).collect();
        let mut v = v;
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for k in 2..v.len() {
            let r = crate::sorting::top_k_sum(&v, k).unwrap() - 3.5;
            assert_eq!(satisfying_pairs(&v, k, r).unwrap().len(), 1);
            let res = project_sorted_grid(&v, k, r).unwrap();
            assert!(res.iterations <= k * (v.len() - k + 1));
        }
    }

    #[test]
    fn deadline_in_the_past_times_out() {
        let v = [4.0, 3.0, 2.0, 1.0];
        let err = project_sorted_grid_until(&v, 2, 5.0, Some(Instant::now())).unwrap_err();
        assert!(matches!(err, Error::TimedOut { .. }));
    }
}
