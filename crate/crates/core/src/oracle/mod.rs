//! Slow, independent references used by the test suite and the `check`
//! subcommand. Nothing here is on a production path.

mod dense;
mod exhaustive;
mod kkt;
mod nnls;
mod qp;

pub use dense::{dense_dtz, dense_window_dual, lcp_certificate, tridiagonal, LcpCertificate};
pub use exhaustive::{project_exhaustive, MAX_EXHAUSTIVE_N};
pub use kkt::{kkt_verify, kkt_verify_tol};
pub use nnls::{nnls, support_is_finite_lp};
pub use qp::{qp_sorted, qp_top_k_sum, qp_vecknorm, MAX_QP_N};
