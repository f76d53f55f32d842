use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Nonnegative least squares `min ‖A y − b‖, y >= 0` (Lawson–Hanson).
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let cols = a.ncols();
    let tol = 1e-12 * a.amax().max(1.0) * b.amax().max(1.0);
    let mut y = DVector::zeros(cols);
    let mut passive = vec![false; cols];
    for _ in 0..3 * cols + 10 {
        let grad = a.transpose() * (b - a * &y);
        let enter = (0..cols)
            .filter(|&j| !passive[j] && grad[j] > tol)
            .max_by(|&i, &j| grad[i].partial_cmp(&grad[j]).unwrap());
        let Some(j) = enter else { break };
        passive[j] = true;
        loop {
            let idx: Vec<usize> = (0..cols).filter(|&j| passive[j]).collect();
            let sub = a.select_columns(&idx);
            let s_p = sub
                .clone()
                .svd(true, true)
                .solve(b, 1e-14)
                .expect("SVD computed with both factors");
            if s_p.iter().all(|&v| v > 0.0) {
                y.fill(0.0);
                for (p, &j) in idx.iter().enumerate() {
                    y[j] = s_p[p];
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (p, &j) in idx.iter().enumerate() {
                if s_p[p] <= 0.0 {
                    alpha = alpha.min(y[j] / (y[j] - s_p[p]));
                }
            }
            for (p, &j) in idx.iter().enumerate() {
                y[j] += alpha * (s_p[p] - y[j]);
                if y[j] <= tol {
                    y[j] = 0.0;
                    passive[j] = false;
                }
            }
        }
    }
    y
}

/// Whether `c` lies in the cone spanned by the indicators of all `k`-subsets,
/// which is exactly when `sup { c^T x : top_k_sum(x) <= r }` is finite.
/// Returns the verdict and, when finite, the LP value `r · sum(y)` of the
/// dual certificate. Enumerates all subsets, so `n <= 12`.
pub fn support_is_finite_lp(c: &[f64], k: usize, r: f64) -> Result<(bool, f64)> {
    let n = c.len();
    if n == 0 || n > 12 || k == 0 || k > n {
        return Err(Error::arg("LP support check needs 1 <= k <= n <= 12"));
    }
    let subsets: Vec<u32> = (0u32..1 << n).filter(|s| s.count_ones() as usize == k).collect();
    let a = DMatrix::from_fn(n, subsets.len(), |i, j| f64::from((subsets[j] >> i) & 1));
    let b = DVector::from_column_slice(c);
    let y = nnls(&a, &b);
    let resid = (&a * &y - &b).amax();
    let finite = resid <= 1e-9 * b.amax().max(1.0);
    Ok((finite, r * y.sum()))
}
