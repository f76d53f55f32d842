use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::ProjectionInstance;

/// Shifts `x0` by `delta = r / k` so the budget becomes zero. The projection
/// of the original instance is the projection of the shifted one plus
/// `delta`.
pub fn translate_to_zero_budget<T: Scalar>(inst: &ProjectionInstance<T>) -> Result<(ProjectionInstance<T>, T)> {
    let delta = inst.r() / T::of(inst.k());
    let x0 = inst.x0().iter().map(|&v| v - delta).collect();
    Ok((ProjectionInstance::new(x0, inst.k(), T::zero())?, delta))
}

/// Lower bound on the plateau value of a zero-budget instance, so that the
/// plateau ends within the entries `>=` the bound:
/// `max((1 − k)(values[1] − values[k]), values[n])`.
pub fn k1_upper_bound<T: Scalar>(values: &[T], k: usize) -> Result<T> {
    check(values, k)?;
    let spread = values[0] - values[k - 1];
    let first = (T::one() - T::of(k)) * spread;
    Ok(first.max_of(values[values.len() - 1]))
}

/// Variant of [`k1_upper_bound`] for a caller-supplied `p > k` whose prefix
/// sum `values[1] + ... + values[p]` is nonpositive:
/// `max(p / (p − k) · (values[1] − values[k]), values[n])`.
pub fn k1_upper_bound_improved<T: Scalar>(values: &[T], k: usize, p: usize) -> Result<T> {
    check(values, k)?;
    if p <= k || p > values.len() {
        return Err(Error::arg(format!("p = {p} must satisfy k < p <= n (k = {k})")));
    }
    let prefix = values[..p].iter().fold(T::zero(), |acc, &v| acc + v);
    if prefix > T::zero() {
        return Err(Error::arg(format!("sum of the first {p} values is positive")));
    }
    let spread = values[0] - values[k - 1];
    let first = T::of(p) / T::of(p - k) * spread;
    Ok(first.max_of(values[values.len() - 1]))
}

/// Number of entries at or above `bound`; with a bound from
/// [`k1_upper_bound`] this is a valid partial-sort length.
pub fn count_at_least<T: Scalar>(x: &[T], bound: T) -> usize {
    x.iter().filter(|&&v| v >= bound).count()
}

fn check<T: Scalar>(values: &[T], k: usize) -> Result<()> {
    if k == 0 || k > values.len() {
        return Err(Error::arg(format!("k = {k} outside 1..={}", values.len())));
    }
    Ok(())
}
