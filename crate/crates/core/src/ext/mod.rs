//! Extensions built on the sorted engines: a partial-sort front end,
//! budget translation, the support function of the constraint set and
//! projection onto the vector-k-norm ball.

mod partial;
mod support;
mod translate;
mod vecknorm;

pub use partial::{project_partial_sort, PartialSortHint};
pub use support::{support_function, support_is_finite};
pub use translate::{count_at_least, k1_upper_bound, k1_upper_bound_improved, translate_to_zero_budget};
pub use vecknorm::project_vector_k_norm;
