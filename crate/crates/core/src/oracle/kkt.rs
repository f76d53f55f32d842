use crate::types::ProjectionResult;

/// Checks a sorted-order solution `res.x` of the projection of `values`
/// against the optimality system directly, with tolerance
/// `1e-10 · max(1, max |values|)`.
///
/// With `lambda > 0` this finds the plateau of `x` around position `k`,
/// builds the subgradient `mu = (values − x) / lambda` of the top-k-sum at `x`
/// and requires `mu = 1` on the head, `0 <= mu <= 1` with `sum = k − k0` on
/// the plateau, `mu = 0` on the tail, and the budget to hold with equality.
/// With `lambda = 0` it requires `x = values` and a feasible input.
pub fn kkt_verify(values: &[f64], res: &ProjectionResult, k: usize, r: f64) -> bool {
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    kkt_verify_tol(values, res, k, r, 1e-10 * scale)
}

pub fn kkt_verify_tol(values: &[f64], res: &ProjectionResult, k: usize, r: f64, tol: f64) -> bool {
    let (x, lambda) = (&res.x, res.lambda);
    let n = values.len();
    if x.len() != n || k == 0 || k > n || !(lambda >= 0.0) {
        return false;
    }
    if x.windows(2).any(|w| w[0] < w[1] - tol) {
        return false;
    }
    let top: f64 = x[..k].iter().sum();
    if top > r + tol * k as f64 {
        return false;
    }
    if lambda == 0.0 {
        return x.iter().zip(values).all(|(a, b)| (a - b).abs() <= tol);
    }
    if (top - r).abs() > tol * k as f64 {
        return false;
    }

    let pivot = x[k - 1];
    let k0 = x.iter().filter(|&&v| v > pivot + tol).count();
    let k1 = x.iter().filter(|&&v| v >= pivot - tol).count();
    if k0 >= k || k1 < k {
        return false;
    }
    let resid = |i: usize| values[i] - x[i];
    let head = (0..k0).all(|i| (resid(i) - lambda).abs() <= tol);
    let tail = (k1..n).all(|i| resid(i).abs() <= tol);
    let plateau = (k0..k1).all(|i| resid(i) >= -tol && resid(i) <= lambda + tol);
    let mass: f64 = (k0..k1).map(resid).sum();
    let balanced = (mass - lambda * (k - k0) as f64).abs() <= tol * (k1 - k0) as f64;
    head && tail && plateau && balanced
}
