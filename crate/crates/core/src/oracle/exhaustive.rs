use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::types::{ProjectionResult, Solver};

pub const MAX_EXHAUSTIVE_N: usize = 256;

fn exact(v: f64) -> Result<BigRational> {
    BigRational::from_float(v).ok_or_else(|| Error::arg(format!("{v} is not finite")))
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Tries every index pair `(k0, k1)` of a nonincreasing `values` and returns
/// the unique one meeting the five optimality conditions.
///
/// All arithmetic is exact: inputs are converted to big rationals, block sums
/// are differences of prefix sums, and for each pair the plateau value
/// `theta` and multiplier `lambda` solve
///
/// ```text
/// (k − k0) theta − k0 lambda        = r − sum(head)
/// (k1 − k0) theta + (k − k0) lambda = sum(plateau)
/// ```
///
/// (budget active; plateau residuals sum to `lambda (k − k0)`) by Cramer's
/// rule. Only the final point is rounded to `f64`. Accepts `k = 1` and
/// `k = n`; rejects feasible inputs.
pub fn project_exhaustive(values: &[f64], k: usize, r: f64) -> Result<ProjectionResult> {
    let n = values.len();
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::arg(format!("exhaustive oracle limited to n <= {MAX_EXHAUSTIVE_N}")));
    }
    if k == 0 || k > n {
        return Err(Error::arg(format!("k = {k} outside 1..={n}")));
    }
    let v: Vec<BigRational> = values.iter().map(|&x| exact(x)).collect::<Result<_>>()?;
    let r = exact(r)?;
    let mut prefix = vec![BigRational::zero()];
    for x in &v {
        let next = prefix.last().unwrap() + x;
        prefix.push(next);
    }
    if prefix[k] <= r {
        return Err(Error::arg("input is feasible; nothing to project"));
    }

    let mut hits = Vec::new();
    for k0 in 0..k {
        for k1 in k..=n {
            let head = &prefix[k0];
            let plateau = &prefix[k1] - &prefix[k0];
            let (a, b) = (int(k - k0), -int(k0));
            let (c, d) = (int(k1 - k0), int(k - k0));
            let e = &r - head;
            let det = &a * &d - &b * &c;
            let theta = (&e * &d - &b * &plateau) / &det;
            let lambda = (&a * &plateau - &e * &c) / &det;
            let upper = &theta + &lambda;
            let ok = lambda > BigRational::zero()
                && (k0 == 0 || v[k0 - 1] > upper)
                && upper >= v[k0]
                && v[k1 - 1] >= theta
                && (k1 == n || theta > v[k1]);
            if ok {
                hits.push((k0, k1, theta, lambda));
            }
        }
    }
    if hits.len() != 1 {
        return Err(Error::invariant(format!(
            "expected exactly one optimal index pair, found {}: {:?}",
            hits.len(),
            hits.iter().map(|h| (h.0, h.1)).collect::<Vec<_>>()
        )));
    }
    let (k0, k1, theta, lambda) = hits.pop().unwrap();
    let f = |q: &BigRational| q.to_f64().expect("rational converts to f64");
    let x = v
        .iter()
        .enumerate()
        .map(|(i, vi)| {
            if i < k0 {
                f(&(vi - &lambda))
            } else if i < k1 {
                f(&theta)
            } else {
                values[i]
            }
        })
        .collect();
    Ok(ProjectionResult {
        x,
        lambda: f(&lambda),
        theta: Some(f(&theta)),
        k0,
        k1,
        iterations: k * (n - k + 1),
        method: Solver::Grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let res = project_exhaustive(&[4.0, 3.0, 2.0, 1.0], 2, 5.0).unwrap();
        assert_eq!(res.x, vec![3.0, 2.0, 2.0, 1.0]);
        assert_eq!((res.k0, res.k1, res.lambda), (1, 3, 1.0));
        assert!(project_exhaustive(&[4.0, 3.0, 2.0, 1.0], 2, 7.0).is_err());
        assert!(matches!(
            project_exhaustive(&vec![0.0; 300], 2, -1.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn closed_form_cases() {
        let res = project_exhaustive(&[3.0, 1.0], 1, 2.0).unwrap();
        assert_eq!(res.x, vec![2.0, 1.0]);
        let res = project_exhaustive(&[3.0, 1.0], 2, 2.0).unwrap();
        assert_eq!(res.x, vec![2.0, 0.0]);
    }

    #[test]
    fn equality_cases_are_exact() {
        // k = n with distinct values: the third condition holds with equality.
        let v = [0.7390713825683309, 0.6190673336166307, 0.34030384375567146, 0.05343804075698022];
        let res = project_exhaustive(&v, 4, -0.3).unwrap();
        assert_eq!((res.k0, res.k1), (3, 4));
    }
}
