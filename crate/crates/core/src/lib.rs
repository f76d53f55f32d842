//! Euclidean projection onto the set of vectors whose `k` largest components
//! sum to at most `r`.
//!
//! Two linear-time sorted engines are provided, an early-stopping walk over
//! index pairs ([`Method::Esgs`]) and parametric LCP pivoting
//! ([`Method::Plcp`]), together with the quadratic full grid search
//! ([`Method::Grid`]) used as a baseline. [`project`] handles the closed-form
//! cases, sorting and unsorting.
//!
//! ```
//! use topksum::{project, Method, ProjectionInstance, Tolerances};
//!
//! let inst = ProjectionInstance::new(vec![1.0, 2.0, 4.0, 3.0], 2, 5.0).unwrap();
//! let res = project(&inst, Method::Esgs, &Tolerances::default()).unwrap();
//! assert_eq!(res.x, vec![1.0, 2.0, 3.0, 2.0]);
//! assert_eq!((res.k0, res.k1), (1, 3));
//! ```

pub mod bench;
pub mod error;
pub mod esgs;
pub mod ext;
pub mod grid;
pub mod io;
pub mod oracle;
pub mod plcp;
mod project;
mod scalar;
mod sorting;
mod types;

pub use error::{Error, Result};
pub use ext::{
    k1_upper_bound, k1_upper_bound_improved, project_partial_sort, project_vector_k_norm, support_function,
    translate_to_zero_budget, PartialSortHint,
};
pub use project::{project, project_trivial, solve_sorted, solve_sorted_until};
pub use scalar::Scalar;
pub use sorting::{find_index_pair, is_sorted_desc, sort_desc, top_k_sum};
pub use types::{Method, ProjectionInstance, ProjectionResult, Solver, SortedView, Tolerances};
