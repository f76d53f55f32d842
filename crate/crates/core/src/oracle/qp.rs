//! Primal active-set method for `min ½‖z − v‖²` over the sorted polyhedron
//! `{z_1 >= ... >= z_n, sum_{i<=k} z_i <= r}`, optionally with `z_n >= 0`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub const MAX_QP_N: usize = 64;

/// Constraint rows `g^T z <= h`.
fn constraints(n: usize, k: usize, r: f64, nonneg: bool) -> (Vec<DVector<f64>>, Vec<f64>) {
    let mut g = Vec::new();
    let mut h = Vec::new();
    for i in 0..n - 1 {
        let mut row = DVector::zeros(n);
        row[i] = -1.0;
        row[i + 1] = 1.0;
        g.push(row);
        h.push(0.0);
    }
    if nonneg {
        let mut row = DVector::zeros(n);
        row[n - 1] = -1.0;
        g.push(row);
        h.push(0.0);
    }
    g.push(DVector::from_fn(n, |i, _| if i < k { 1.0 } else { 0.0 }));
    h.push(r);
    (g, h)
}

/// Solves the sorted QP for a nonincreasing `values`. Starts from the
/// feasible point `(r / k) 1`, which needs `r >= 0` when `nonneg` is set.
pub fn qp_sorted(values: &[f64], k: usize, r: f64, nonneg: bool) -> Result<Vec<f64>> {
    let n = values.len();
    if n == 0 || n > MAX_QP_N {
        return Err(Error::arg(format!("QP oracle needs 1 <= n <= {MAX_QP_N}")));
    }
    if k == 0 || k > n {
        return Err(Error::arg(format!("k = {k} outside 1..={n}")));
    }
    if nonneg && r < 0.0 {
        return Err(Error::arg("negative radius"));
    }
    let (g, h) = constraints(n, k, r, nonneg);
    let v = DVector::from_column_slice(values);
    let scale = values.iter().fold(1.0f64, |m, x| m.max(x.abs())).max(r.abs());
    let eps = 1e-13 * scale;
    let mut z = DVector::from_element(n, r / k as f64);
    let mut work: Vec<usize> = Vec::new();

    for _ in 0..50 * (n + 2) * (n + 2) {
        let grad = &z - &v;
        let (step, mult) = if work.is_empty() {
            (-grad.clone(), DVector::zeros(0))
        } else {
            let gw = DMatrix::from_fn(work.len(), n, |a, j| g[work[a]][j]);
            let gram = &gw * gw.transpose();
            let nu = gram
                .lu()
                .solve(&(&gw * &grad))
                .ok_or_else(|| Error::invariant("dependent working set"))?;
            (-&grad + gw.transpose() * &nu, -nu)
        };

        if step.amax() <= eps {
            let worst = (0..mult.len())
                .filter(|&a| mult[a] < -eps)
                .min_by(|&a, &b| mult[a].partial_cmp(&mult[b]).unwrap());
            match worst {
                None => return Ok(z.iter().copied().collect()),
                Some(a) => {
                    work.remove(a);
                    continue;
                }
            }
        }

        let mut alpha = 1.0;
        let mut block = None;
        for (i, gi) in g.iter().enumerate() {
            if work.contains(&i) {
                continue;
            }
            let gp = gi.dot(&step);
            if gp > eps {
                let t = (h[i] - gi.dot(&z)) / gp;
                if t < alpha {
                    alpha = t.max(0.0);
                    block = Some(i);
                }
            }
        }
        z += alpha * step;
        if let Some(i) = block {
            work.push(i);
        }
    }
    Err(Error::invariant("active-set iteration limit reached"))
}

/// Projection of an arbitrary `x0` onto `{x : top_k_sum(x) <= r}` through
/// the sorted QP.
pub fn qp_top_k_sum(x0: &[f64], k: usize, r: f64) -> Result<Vec<f64>> {
    let view = crate::sort_desc(x0)?;
    let z = qp_sorted(&view.values, k, r, false)?;
    Ok(view.unpermute(&z))
}

/// Projection of `z0` onto the vector-k-norm ball of radius `r`, `n <= 16`.
pub fn qp_vecknorm(z0: &[f64], k: usize, r: f64) -> Result<Vec<f64>> {
    if z0.len() > 16 {
        return Err(Error::arg("vector-k-norm QP oracle limited to n <= 16"));
    }
    let mag: Vec<f64> = z0.iter().map(|v| v.abs()).collect();
    let view = crate::sort_desc(&mag)?;
    let z = qp_sorted(&view.values, k, r, true)?;
    Ok(view
        .unpermute(&z)
        .into_iter()
        .zip(z0)
        .map(|(m, &s)| if s < 0.0 { -m } else { m })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn examples() {
        assert!(close(&qp_vecknorm(&[3.0, 0.1], 2, 1.0).unwrap(), &[1.0, 0.0]));
        assert!(close(&qp_vecknorm(&[0.3, -0.2], 2, 1.0).unwrap(), &[0.3, -0.2]));
        assert!(close(
            &qp_top_k_sum(&[1.0, 2.0, 4.0, 3.0], 2, 5.0).unwrap(),
            &[1.0, 2.0, 3.0, 2.0]
        ));
        assert!(qp_vecknorm(&[0.0; 17], 2, 1.0).is_err());
    }
}
