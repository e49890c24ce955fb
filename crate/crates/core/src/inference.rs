//! Permutation test of the independence null, normal-theory confidence
//! intervals, and simulation of the null distribution.
//!
//! Permuting the y rows realises full independence, so the test is exact for
//! that null. Dependent but sub-independent pairs also have siCov = 0, and
//! no resampling scheme is offered for that composite null.

use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::config::{EstimatorConfig, Mode};
use crate::error::{Error, Result};
use crate::estimate::Warning;
use crate::estimators::sicov_hat_with;
use crate::exec::{Executor, Sequential};
use crate::kernels::{k1_draws, require_rows, term_statistics_with, Convention, PairingCache};
use crate::rng::{derive_seed, substream, Stream};
use crate::simulate::Generator;
use crate::stats;
use crate::{AlphaParam, PairedSample};

/// Smallest number of permutations that can resolve level 0.05.
pub const MIN_PERMUTATIONS: usize = 19;
/// Smallest number of replicates for [`null_distribution_sim`].
pub const MIN_NULL_REPLICATES: usize = 100;
/// Degeneracy threshold factor: warn when `variance_hat ≤ 1e-3 (K̂₁ + K̂₂)² / n`.
pub const DEGENERACY_FACTOR: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct TestResult {
    /// `n · siCov_hat` on the observed pairing.
    pub statistic: f64,
    /// The statistic under each seeded permutation of the y rows, in replicate order.
    pub replicates: Vec<f64>,
    /// `(1 + #{replicate ≥ statistic}) / (permutations + 1)`.
    pub p_value: f64,
    pub level: f64,
    pub reject: bool,
    pub permutations: usize,
    pub seed: u64,
    pub mode: Mode,
}

fn check_level(level: f64) -> Result<()> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidLevel { level })
    }
}

/// Uniform permutation of `0..n` for replicate `r`.
fn permutation(n: usize, seed: u64, r: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut substream(seed, Stream::Permutation, r as u64));
    perm
}

/// Permutation test of `H₀: X ⫫ Y` with statistic `n · siCov_hat`.
///
/// Rows are first put in lexicographic order, so the result does not depend
/// on how the input rows are labelled. Replicates use the same estimator
/// configuration (and seed) as the observed statistic. Rejects when
/// `p_value ≤ level`.
pub fn permutation_test(
    sample: &PairedSample,
    alpha: AlphaParam,
    permutations: usize,
    level: f64,
    config: &EstimatorConfig,
) -> Result<TestResult> {
    permutation_test_with(sample, alpha, permutations, level, config, &Sequential)
}

pub fn permutation_test_with<E: Executor>(
    sample: &PairedSample,
    alpha: AlphaParam,
    permutations: usize,
    level: f64,
    config: &EstimatorConfig,
    exec: &E,
) -> Result<TestResult> {
    if permutations < MIN_PERMUTATIONS {
        return Err(Error::TooFewPermutations { got: permutations });
    }
    check_level(level)?;
    config.validate()?;
    let n = sample.n();
    require_rows("the permutation test", 4, n)?;
    let mode = config.resolve_mode(n, sample.p(), alpha);
    let scale = n as f64;
    let seed = config.seed;
    let sample = &canonical_order(sample);

    let sorted = sample.p() == 1 && alpha.is_one() && mode != Mode::UIncomplete;
    let (statistic, replicates) = if sorted {
        let convention = if mode == Mode::VFast { Convention::V } else { Convention::U };
        let cache = PairingCache::new(sample.x(), sample.y(), convention);
        let statistic = scale * cache.terms(None).sicov();
        let reps = exec.map(permutations, |r| scale * cache.terms(Some(&permutation(n, seed, r))).sicov());
        (statistic, reps)
    } else {
        // generic path: fix the mode so every replicate is estimated alike
        let cfg = EstimatorConfig { mode: Some(mode), ..config.clone() };
        let statistic = scale * term_statistics_with(sample, alpha, &cfg, exec)?.sicov();
        let reps = exec.map(permutations, |r| {
            let permuted = sample.with_y_permuted(&permutation(n, seed, r));
            term_statistics_with(&permuted, alpha, &cfg, &Sequential).map(|t| scale * t.sicov())
        });
        (statistic, reps.into_iter().collect::<Result<Vec<_>>>()?)
    };

    let exceed = replicates.iter().filter(|&&v| v >= statistic).count();
    let p_value = (1 + exceed) as f64 / (permutations + 1) as f64;
    Ok(TestResult { statistic, replicates, p_value, level, reject: p_value <= level, permutations, seed, mode })
}

fn canonical_order(sample: &PairedSample) -> PairedSample {
    let mut order: Vec<usize> = (0..sample.n()).collect();
    let key = |i: usize| sample.x_row(i).iter().chain(sample.y_row(i));
    order.sort_by(|&a, &b| {
        key(a).zip(key(b)).map(|(u, v)| u.total_cmp(v)).find(|o| o.is_ne()).unwrap_or(core::cmp::Ordering::Equal)
    });
    sample.select_rows(&order).expect("a permutation of valid rows")
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceInterval {
    pub lower: f64,
    pub upper: f64,
    /// Confidence level, e.g. 0.95.
    pub level: f64,
    /// Estimated variance of `siCov_hat`: `16 · Var(k̂₁) / n`.
    pub variance_hat: f64,
    pub center: f64,
    /// `DegenerateVariance` when the first projection looks constant, in
    /// which case the normal limit does not apply.
    pub warnings: Vec<Warning>,
}

/// Normal-theory interval `siCov_hat ± z·√(16 Var(k₁)/n)`.
///
/// `k₁(zᵢ)` is estimated for every row with `k1_budget` kernel evaluations
/// (exactly when the budget covers all triples of other rows). The Monte
/// Carlo part of the spread of the `k̂₁(zᵢ)` is subtracted before scaling.
pub fn asymptotic_ci(
    sample: &PairedSample,
    alpha: AlphaParam,
    level: f64,
    k1_budget: u64,
    config: &EstimatorConfig,
) -> Result<ConfidenceInterval> {
    asymptotic_ci_with(sample, alpha, level, k1_budget, config, &Sequential)
}

pub fn asymptotic_ci_with<E: Executor>(
    sample: &PairedSample,
    alpha: AlphaParam,
    level: f64,
    k1_budget: u64,
    config: &EstimatorConfig,
    exec: &E,
) -> Result<ConfidenceInterval> {
    check_level(level)?;
    let n = sample.n();
    require_rows("the asymptotic interval", 8, n)?;
    if k1_budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let report = sicov_hat_with(sample, alpha, config, exec)?;
    let center = report.estimate.value;
    let a = alpha.get();
    let draws = exec.map(n, |i| k1_draws(sample, i, a, k1_budget, config.seed));
    let draws = draws.into_iter().collect::<Result<Vec<_>>>()?;
    let means: Vec<f64> = draws.iter().map(|d| d.mean).collect();
    let noise = stats::mean(&draws.iter().map(|d| d.mc_variance).collect::<Vec<_>>());
    let var_k1 = (stats::variance(&means) - noise).max(0.0);
    let nf = n as f64;
    let variance_hat = 16.0 * var_k1 / nf;

    let scale = report.terms.k1 + report.terms.k2;
    let threshold = DEGENERACY_FACTOR * scale * scale / nf;
    let mut warnings = Vec::new();
    if variance_hat <= threshold {
        warnings.push(Warning::DegenerateVariance { variance: variance_hat, threshold });
    }
    let half = stats::normal_quantile(0.5 + level / 2.0) * crate::math::sqrt(variance_hat);
    Ok(ConfidenceInterval { lower: center - half, upper: center + half, level, variance_hat, center, warnings })
}

/// Draws of `√n · siCov_hat` under a generator with independent margins.
///
/// Replicate `r` samples from substream `(seed, Replicate, r)` and estimates
/// with an estimator seed derived from the same pair.
pub fn null_distribution_sim(
    generator: &Generator,
    n: usize,
    replicates: usize,
    alpha: AlphaParam,
    seed: u64,
) -> Result<Vec<f64>> {
    null_distribution_sim_with(generator, n, replicates, alpha, seed, &Sequential)
}

pub fn null_distribution_sim_with<E: Executor>(
    generator: &Generator,
    n: usize,
    replicates: usize,
    alpha: AlphaParam,
    seed: u64,
    exec: &E,
) -> Result<Vec<f64>> {
    if replicates < MIN_NULL_REPLICATES {
        return Err(Error::TooFewReplicates { needed: MIN_NULL_REPLICATES, got: replicates });
    }
    require_rows("null simulation", 4, n)?;
    let root_n = crate::math::sqrt(n as f64);
    let draws = exec.map(replicates, |r| {
        let sample = generator.replicate(n, seed, r as u64)?;
        let cfg = EstimatorConfig::default().seed(derive_seed(seed, Stream::EstimatorSeed, r as u64));
        let report = sicov_hat_with(&sample, alpha, &cfg, &Sequential)?;
        Ok(root_n * report.estimate.value)
    });
    draws.into_iter().collect()
}
