//! Sub-independence covariance (`siCov`) and correlation (`siCor`) between
//! paired random vectors.
//!
//! Two vectors `X, Y ∈ ℝᵖ` are *sub-independent* when the characteristic
//! function of `X + Y` factors as `φ_X · φ_Y`. The α-sub-independence
//! covariance is the weighted L² distance between the two sides,
//!
//! ```text
//! siCov⁽ᵅ⁾(X, Y) = ∫ |φ_{X+Y}(t) − φ_X(t) φ_Y(t)|² c(p,α)⁻¹ |t|^{−α−p} dt
//!               = 2 E|X₁+Y₁−X₂−Y₃|^α − E|X₁+Y₂−X₃−Y₄|^α − E|X₁+Y₁−X₂−Y₂|^α
//! ```
//!
//! and vanishes exactly when the pair is sub-independent.
//!
//! This crate is `no_std` (it needs `alloc`). It holds the data model, the
//! moment terms and the symmetric order-4 kernel, the point estimators,
//! closed-form and quadrature oracles, and the permutation / asymptotic
//! inference. File formats, the CLI and threaded execution live in the
//! `sicov` companion crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod alpha;
mod config;
mod error;
mod estimate;
pub mod estimators;
pub mod exec;
pub mod inference;
pub mod kernels;
pub(crate) mod math;
pub mod oracle;
pub mod rng;
mod sample;
pub mod simulate;
pub mod stats;

pub use alpha::{validate_alpha, AlphaContext, AlphaParam};
pub use config::{EstimatorConfig, Mode, DEFAULT_EXACT_THRESHOLD, DEFAULT_SEED, DEFAULT_TUPLE_BUDGET};
pub use error::{Error, Result};
pub use estimate::{Basis, CiBounds, DependenceEstimate, EstimateKind, Warning};
pub use sample::PairedSample;
