use crate::error::{Error, Result};
use crate::esgs::{self, Walk};
use crate::project::{project_trivial_tol, unchanged};
use crate::scalar::Scalar;
use crate::sorting::rank_order;
use crate::types::{ProjectionInstance, ProjectionResult};

/// How many of the largest entries to sort before trying a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartialSortHint {
    pub l: usize,
    /// Added to the previous `k1` by [`PartialSortHint::after`].
    pub buffer: usize,
}

impl PartialSortHint {
    pub fn new(l: usize) -> Self {
        PartialSortHint { l, buffer: 0 }
    }

    /// Hint for the next projection in a sequence whose last result had
    /// index pair `(_, prev.k1)`.
    pub fn after<T>(prev: &ProjectionResult<T>, buffer: usize) -> Self {
        PartialSortHint {
            l: prev.k1 + buffer,
            buffer,
        }
    }
}

/// Projects with only the `L` largest entries sorted.
///
/// The solve is accepted when the plateau ends inside the sorted prefix and
/// its value is strictly above every unsorted entry; otherwise `L` is doubled
/// (up to `n`) and the solve repeated. The output is identical to
/// [`crate::project`] with [`crate::Method::Esgs`] and default tolerances.
/// Returns the result together with the `L` that was finally used (0 for the
/// closed-form cases, which need no sorting).
pub fn project_partial_sort<T: Scalar>(
    inst: &ProjectionInstance<T>,
    hint: PartialSortHint,
) -> Result<(ProjectionResult<T>, usize)> {
    if let Some(res) = project_trivial_tol(inst, T::zero()) {
        return Ok((res, 0));
    }
    let (x0, k, r) = (inst.x0(), inst.k(), inst.r());
    let n = x0.len();
    let mut l = hint.l.clamp(k, n);
    let mut idx: Vec<usize> = (0..n).collect();
    let mut values = vec![T::zero(); n];
    loop {
        if l < n {
            idx.select_nth_unstable_by(l - 1, |&i, &j| rank_order(x0, i, j));
        }
        idx[..l].sort_unstable_by(|&i, &j| rank_order(x0, i, j));
        for (v, &i) in values.iter_mut().zip(&idx) {
            *v = x0[i];
        }
        // Rounding can make the sorted prefix sum feasible even though the
        // selection sum was not; answer as the full-sort path does.
        let head = values[..k].iter().fold(T::zero(), |acc, &v| acc + v);
        if head <= r {
            let kth = values[k - 1];
            let k0 = x0.iter().filter(|&&v| v > kth).count();
            let k1 = x0.iter().filter(|&&v| v >= kth).count();
            return Ok((unchanged(x0, k0, k1), l));
        }
        if let Walk::Done(res) = esgs::walk(&values, k, r, l)? {
            if accepted(&values, &res, l) {
                let mut x = vec![T::zero(); n];
                for (&i, &v) in idx.iter().zip(&res.x) {
                    x[i] = v;
                }
                return Ok((ProjectionResult { x, ..res }, l));
            }
        }
        if l == n {
            return Err(Error::invariant("full sort did not certify the solution"));
        }
        l = (2 * l).min(n);
    }
}

fn accepted<T: Scalar>(values: &[T], res: &ProjectionResult<T>, l: usize) -> bool {
    if res.k1 > l {
        return false;
    }
    if res.k1 == values.len() {
        return true;
    }
    let theta = res.theta.expect("engine result carries a plateau value");
    values[l..].iter().all(|&v| theta > v)
}
