//! Norm powers, the six moment terms, the symmetric kernel and its first
//! projection, and the weight constant `c(p, α)`.

mod kernel;
mod norm;
pub(crate) mod sorted;
mod terms;

pub(crate) use kernel::k1_draws;
pub use kernel::{k1_hat, kernel_k, Obs};
pub use norm::{c_const, norm_alpha, WeightConstant};
pub use sorted::PairingCache;
pub use terms::{term_statistics, term_statistics_with, Convention, TermStatistics, TupleCounts, SAMPLING_CHUNK};
pub(crate) use terms::require_rows;
