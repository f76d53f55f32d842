use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A projection problem: find the point closest to `x0` whose `k` largest
/// components sum to at most `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionInstance<T = f64> {
    x0: Vec<T>,
    k: usize,
    r: T,
}

impl<T: Scalar> ProjectionInstance<T> {
    pub fn new(x0: Vec<T>, k: usize, r: T) -> Result<Self> {
        let n = x0.len();
        if n == 0 {
            return Err(Error::arg("input vector is empty"));
        }
        if k == 0 || k > n {
            return Err(Error::arg(format!("k = {k} outside 1..={n}")));
        }
        if let Some(i) = x0.iter().position(|v| v.is_nan()) {
            return Err(Error::arg(format!("x0[{i}] is NaN")));
        }
        if r.is_nan() {
            return Err(Error::arg("budget r is NaN"));
        }
        Ok(ProjectionInstance { x0, k, r })
    }

    pub fn x0(&self) -> &[T] {
        &self.x0
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn n(&self) -> usize {
        self.x0.len()
    }

    pub fn into_parts(self) -> (Vec<T>, usize, T) {
        (self.x0, self.k, self.r)
    }
}

impl ProjectionInstance<f64> {
    /// Like [`ProjectionInstance::new`] but also rejects infinite entries.
    pub fn finite(x0: Vec<f64>, k: usize, r: f64) -> Result<Self> {
        if let Some(i) = x0.iter().position(|v| !v.is_finite()) {
            return Err(Error::arg(format!("x0[{i}] = {} is not finite", x0[i])));
        }
        if !r.is_finite() {
            return Err(Error::arg(format!("budget r = {r} is not finite")));
        }
        Self::new(x0, k, r)
    }
}

/// Nonincreasing rearrangement of a vector together with the permutation
/// that produced it: `values[i] == x[perm[i]]` (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct SortedView<T = f64> {
    pub values: Vec<T>,
    pub perm: Vec<usize>,
}

impl<T: Scalar> SortedView<T> {
    /// Scatters a vector expressed in sorted order back to input order.
    pub fn unpermute(&self, sorted: &[T]) -> Vec<T> {
        debug_assert_eq!(sorted.len(), self.perm.len());
        let mut out = vec![T::zero(); sorted.len()];
        for (&p, &v) in self.perm.iter().zip(sorted) {
            out[p] = v;
        }
        out
    }
}

/// Engine selection for [`crate::project`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Esgs,
    Plcp,
    Grid,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Esgs, Method::Plcp, Method::Grid];

    pub fn name(self) -> &'static str {
        match self {
            Method::Esgs => "esgs",
            Method::Plcp => "plcp",
            Method::Grid => "grid",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "esgs" => Ok(Method::Esgs),
            "plcp" => Ok(Method::Plcp),
            "grid" => Ok(Method::Grid),
            other => Err(Error::arg(format!("unknown method `{other}`"))),
        }
    }
}

/// Which path produced a [`ProjectionResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Esgs,
    Plcp,
    Grid,
    /// Closed-form cases: feasible input, `k = 1`, or `k = n`.
    Trivial,
}

impl From<Method> for Solver {
    fn from(m: Method) -> Self {
        match m {
            Method::Esgs => Solver::Esgs,
            Method::Plcp => Solver::Plcp,
            Method::Grid => Solver::Grid,
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::Esgs => "esgs",
            Solver::Plcp => "plcp",
            Solver::Grid => "grid",
            Solver::Trivial => "trivial",
        })
    }
}

/// Solution of a projection together with its multiplier and index pair.
///
/// `k0` and `k1` use the 1-based convention: the head block is positions
/// `1..=k0`, the plateau `k0+1..=k1` and the untouched tail `k1+1..=n` of the
/// sorted solution. Because they are counts, `values[..k0]`, `values[k0..k1]`
/// and `values[k1..]` are the same blocks on a 0-based slice.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult<T = f64> {
    pub x: Vec<T>,
    pub lambda: T,
    /// Plateau value; `None` when the input was already feasible.
    pub theta: Option<T>,
    pub k0: usize,
    pub k1: usize,
    pub iterations: usize,
    pub method: Solver,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Slack allowed when deciding whether the input is already feasible.
    pub feas_tol: f64,
    /// Agreement threshold used when comparing engines against each other.
    pub agree_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            feas_tol: 0.0,
            agree_tol: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn new(feas_tol: f64, agree_tol: f64) -> Result<Self> {
        if !(feas_tol >= 0.0) || !(agree_tol >= 0.0) {
            return Err(Error::arg("tolerances must be nonnegative"));
        }
        Ok(Tolerances {
            feas_tol,
            agree_tol,
        })
    }
}
