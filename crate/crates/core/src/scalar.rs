use std::fmt::Debug;

use num_traits::{FromPrimitive, Num};

/// Ordered field the sorted engines run over.
///
/// `f64` is the production type. Exact rationals also satisfy the bound, which
/// lets tests evaluate the KKT indicators without rounding.
pub trait Scalar: Num + Copy + PartialOrd + Debug + FromPrimitive {
    #[inline]
    fn of(n: usize) -> Self {
        Self::from_usize(n).expect("index does not fit the scalar type")
    }

    #[inline]
    fn is_nan(self) -> bool {
        self.partial_cmp(&self).is_none()
    }

    #[inline]
    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    #[inline]
    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl<T> Scalar for T where T: Num + Copy + PartialOrd + Debug + FromPrimitive {}

/// Descending comparison with a total order; NaN must be filtered beforehand.
#[inline]
pub(crate) fn desc<T: Scalar>(a: &T, b: &T) -> std::cmp::Ordering {
    b.partial_cmp(a).expect("NaN reached a comparison")
}
