//! Selection, sorting and order-structure helpers shared by every engine.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::{desc, Scalar};
use crate::types::SortedView;

fn check_finite_order<T: Scalar>(x: &[T]) -> Result<()> {
    match x.iter().position(|v| v.is_nan()) {
        Some(i) => Err(Error::arg(format!("entry {i} is NaN"))),
        None => Ok(()),
    }
}

/// Sum of the `k` largest entries and the `k`-th largest value, in expected
/// linear time.
pub(crate) fn select_top_k<T: Scalar>(x: &[T], k: usize) -> (T, T) {
    let mut buf = x.to_vec();
    let (head, kth, _) = buf.select_nth_unstable_by(k - 1, desc);
    let kth = *kth;
    let sum = head.iter().fold(T::zero(), |acc, &v| acc + v) + kth;
    (sum, kth)
}

/// Sum of the `k` largest components of `x`.
///
/// Uses selection of the `k`-th largest rather than a full sort.
pub fn top_k_sum<T: Scalar>(x: &[T], k: usize) -> Result<T> {
    if k == 0 || k > x.len() {
        return Err(Error::arg(format!("k = {k} outside 1..={}", x.len())));
    }
    check_finite_order(x)?;
    Ok(select_top_k(x, k).0)
}

/// Sorts `x` into nonincreasing order. Ties keep their original index order.
pub fn sort_desc<T: Scalar>(x: &[T]) -> Result<SortedView<T>> {
    if x.is_empty() {
        return Err(Error::arg("cannot sort an empty vector"));
    }
    check_finite_order(x)?;
    let mut perm: Vec<usize> = (0..x.len()).collect();
    perm.sort_unstable_by(|&i, &j| rank_order(x, i, j));
    let values = perm.iter().map(|&i| x[i]).collect();
    Ok(SortedView { values, perm })
}

/// Strict total order used for sorting and partial selection: larger values
/// first, then smaller original index.
#[inline]
pub(crate) fn rank_order<T: Scalar>(x: &[T], i: usize, j: usize) -> Ordering {
    desc(&x[i], &x[j]).then(i.cmp(&j))
}

/// Index pair `(k0, k1)` of a nonincreasing vector around position `k`.
///
/// `k0` counts entries strictly above `values[k]` and `k1` counts entries at
/// or above it (1-based `k`), so `values[k0] > values[k0+1] = ... = values[k1]
/// > values[k1+1]` with the usual infinite sentinels.
pub fn find_index_pair<T: Scalar>(values: &[T], k: usize) -> Result<(usize, usize)> {
    let n = values.len();
    if k == 0 || k > n {
        return Err(Error::arg(format!("k = {k} outside 1..={n}")));
    }
    let pivot = values[k - 1];
    let mut k0 = k - 1;
    while k0 > 0 && values[k0 - 1] == pivot {
        k0 -= 1;
    }
    let mut k1 = k;
    while k1 < n && values[k1] == pivot {
        k1 += 1;
    }
    Ok((k0, k1))
}

/// Whether `values` is nonincreasing.
pub fn is_sorted_desc<T: Scalar>(values: &[T]) -> bool {
    values.windows(2).all(|w| w[0] >= w[1])
}
