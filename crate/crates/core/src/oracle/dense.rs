use nalgebra::{DMatrix, DVector};

/// Dense `m x m` tridiagonal matrix with constant diagonal `2` and
/// off-diagonal `−1`; with `last_one` the final diagonal entry is 1.
pub fn tridiagonal(m: usize, last_one: bool) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(m, m);
    for i in 0..m {
        a[(i, i)] = 2.0;
        if i + 1 < m {
            a[(i, i + 1)] = -1.0;
            a[(i + 1, i)] = -1.0;
        }
    }
    if last_one && m > 0 {
        a[(m - 1, m - 1)] = 1.0;
    }
    a
}

/// Dual on the window `a..=b` (1-based) at multiplier `lambda`:
/// `M_ww^{-1} (−q_w + lambda e_k)` by a dense LU solve.
pub fn dense_window_dual(values: &[f64], a: usize, b: usize, k: usize, lambda: f64) -> Vec<f64> {
    let m = b - a + 1;
    let rhs = DVector::from_fn(m, |p, _| {
        let j = a + p;
        let e = if j == k { lambda } else { 0.0 };
        e - (values[j - 1] - values[j])
    });
    let z = tridiagonal(m, false).lu().solve(&rhs).expect("window matrix is nonsingular");
    z.iter().copied().collect()
}

/// `D^T z` for the window dual of [`dense_window_dual`], with the full
/// `(n − 1) x n` difference matrix built explicitly.
pub fn dense_dtz(values: &[f64], a: usize, b: usize, k: usize, lambda: f64) -> Vec<f64> {
    let n = values.len();
    let zw = dense_window_dual(values, a, b, k, lambda);
    let mut z = DVector::zeros(n - 1);
    for (p, &v) in zw.iter().enumerate() {
        z[a - 1 + p] = v;
    }
    let d = DMatrix::from_fn(n - 1, n, |i, j| {
        if j == i {
            1.0
        } else if j == i + 1 {
            -1.0
        } else {
            0.0
        }
    });
    (d.transpose() * z).iter().copied().collect()
}

/// Dual certificate of a sorted solution: `z` with
/// `x = values − lambda 1_k + D^T z`, and `w = M z + q + lambda d`.
#[derive(Debug, Clone)]
pub struct LcpCertificate {
    pub z: Vec<f64>,
    pub w: Vec<f64>,
    /// `|(D^T z)_n + (x − values + lambda 1_k)_n|`: how far the last row of
    /// the primal identity is from holding.
    pub mismatch: f64,
}

pub fn lcp_certificate(values: &[f64], x: &[f64], k: usize, lambda: f64) -> LcpCertificate {
    let n = values.len();
    let y: Vec<f64> = (0..n)
        .map(|i| x[i] - values[i] + if i < k { lambda } else { 0.0 })
        .collect();
    let mut z = DVector::zeros(n - 1);
    let mut acc = 0.0;
    for i in 0..n - 1 {
        acc += y[i];
        z[i] = acc;
    }
    let mismatch = (acc + y[n - 1]).abs();
    let m = tridiagonal(n - 1, false);
    let q = DVector::from_fn(n - 1, |i, _| values[i] - values[i + 1]);
    let mut w = &m * &z + q;
    if k < n {
        w[k - 1] -= lambda;
    }
    LcpCertificate {
        z: z.iter().copied().collect(),
        w: w.iter().copied().collect(),
        mismatch,
    }
}
