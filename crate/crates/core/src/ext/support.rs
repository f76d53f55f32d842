use crate::error::{Error, Result};

/// Whether `sup { c^T x : top_k_sum(x) <= r }` is finite: `c >= 0` and no
/// entry exceeds the mean share `1^T c / k`. Checking the largest entry covers
/// every entry among the `k` largest.
pub fn support_is_finite(c: &[f64], k: usize) -> Result<bool> {
    if k == 0 || k > c.len() {
        return Err(Error::arg(format!("k = {k} outside 1..={}", c.len())));
    }
    if let Some(i) = c.iter().position(|v| v.is_nan()) {
        return Err(Error::arg(format!("c[{i}] is NaN")));
    }
    let mut total = 0.0;
    let mut top = f64::NEG_INFINITY;
    for &v in c {
        if v < 0.0 {
            return Ok(false);
        }
        total += v;
        top = top.max(v);
    }
    Ok(top * k as f64 <= total)
}

/// Support function of `{x : top_k_sum(x) <= r}` at `c`: `(r / k) 1^T c` when
/// finite, `+inf` otherwise.
pub fn support_function(c: &[f64], k: usize, r: f64) -> Result<f64> {
    if support_is_finite(c, k)? {
        Ok(r / k as f64 * c.iter().sum::<f64>())
    } else {
        Ok(f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(support_function(&[1.0; 4], 2, 5.0).unwrap(), 10.0);
        assert_eq!(support_function(&[1.0, -1.0, 0.0, 0.0], 2, 5.0).unwrap(), f64::INFINITY);
        assert_eq!(support_function(&[2.0, 0.0, 0.0, 0.0], 2, 4.0).unwrap(), f64::INFINITY);
        assert_eq!(support_function(&[0.0; 3], 1, -2.0).unwrap(), 0.0);
        assert!(support_function(&[1.0], 2, 1.0).is_err());
    }
}
