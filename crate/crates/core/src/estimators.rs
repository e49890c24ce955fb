//! Point estimators of siCov and siCor, plus the distance-covariance and
//! Pearson baselines used for comparisons.

use alloc::vec::Vec;
use core::time::Duration;

use crate::config::{EstimatorConfig, Mode};
use crate::error::{Error, Result};
use crate::estimate::{Basis, DependenceEstimate, EstimateKind, Warning};
use crate::exec::{Executor, Sequential};
use crate::kernels::{term_statistics_with, Convention, TermStatistics};
use crate::math::{self, Sum};
use crate::{AlphaParam, PairedSample};

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorReport {
    pub estimate: DependenceEstimate,
    pub terms: TermStatistics,
    /// `K̂₁ + K̂₂ − K̂₃`, filled for siCor.
    pub denominator: Option<f64>,
    /// Wall-clock time, filled in by callers that can measure it.
    pub elapsed: Option<Duration>,
}

fn basis_of(terms: &TermStatistics, mode: Mode) -> Basis {
    match terms.convention {
        Convention::Population => Basis::Population,
        _ => Basis::Sample(mode),
    }
}

/// `siCov = 2Ĵ₁ − Ĵ₂ − Ĵ₃` from precomputed terms.
pub fn sicov_from_terms(terms: TermStatistics, mode: Mode, n: usize) -> EstimatorReport {
    let value = terms.sicov();
    let mut estimate = DependenceEstimate::new(value, EstimateKind::SiCov, terms.alpha, basis_of(&terms, mode), n);
    if value < 0.0 {
        estimate.warnings.push(Warning::Negative(value));
    }
    EstimatorReport { estimate, terms, denominator: None, elapsed: None }
}

/// siCor from precomputed terms. `constant_margin` selects the zero branch
/// of the definition.
pub fn sicor_from_terms(
    terms: TermStatistics,
    mode: Mode,
    n: usize,
    constant_margin: bool,
    clamp: bool,
) -> Result<EstimatorReport> {
    let denominator = terms.denominator();
    let basis = basis_of(&terms, mode);
    let mut estimate = DependenceEstimate::new(0.0, EstimateKind::SiCor, terms.alpha, basis, n);
    if constant_margin {
        estimate.warnings.push(Warning::ConstantMargin);
        return Ok(EstimatorReport { estimate, terms, denominator: Some(denominator), elapsed: None });
    }
    // a denominator at rounding level of K̂₁ + K̂₂ is zero in exact arithmetic
    let floor = 1e-12 * (terms.k1 + terms.k2);
    if denominator <= floor || !denominator.is_finite() {
        return Err(Error::DegenerateDenominator { value: denominator });
    }
    let raw = terms.sicov() / denominator;
    estimate.value = raw;
    if raw < 0.0 {
        estimate.warnings.push(Warning::Negative(raw));
    } else if raw > 1.0 {
        estimate.warnings.push(Warning::AboveOne(raw));
    }
    if clamp && !(0.0..=1.0).contains(&raw) {
        estimate.value = raw.clamp(0.0, 1.0);
        estimate.warnings.push(Warning::Clamped { from: raw });
    }
    Ok(EstimatorReport { estimate, terms, denominator: Some(denominator), elapsed: None })
}

/// Estimate of `siCov⁽ᵅ⁾(X, Y)`.
///
/// In complete U mode this is the unbiased U-statistic of the symmetric
/// kernel over all `C(n, 4)` row subsets; it may be negative.
pub fn sicov_hat(sample: &PairedSample, alpha: AlphaParam, config: &EstimatorConfig) -> Result<EstimatorReport> {
    sicov_hat_with(sample, alpha, config, &Sequential)
}

pub fn sicov_hat_with<E: Executor>(
    sample: &PairedSample,
    alpha: AlphaParam,
    config: &EstimatorConfig,
    exec: &E,
) -> Result<EstimatorReport> {
    let terms = term_statistics_with(sample, alpha, config, exec)?;
    let mode = config.resolve_mode(sample.n(), sample.p(), alpha);
    Ok(sicov_from_terms(terms, mode, sample.n()))
}

/// Estimate of `siCor⁽ᵅ⁾(X, Y) = (2Ĵ₁ − Ĵ₂ − Ĵ₃) / (K̂₁ + K̂₂ − K̂₃)`.
///
/// Numerator and denominator share one tuple sample per term family.
/// A constant margin gives 0 with a warning; a non-positive denominator on
/// non-constant data is an error.
pub fn sicor_hat(sample: &PairedSample, alpha: AlphaParam, config: &EstimatorConfig) -> Result<EstimatorReport> {
    sicor_hat_with(sample, alpha, config, &Sequential)
}

pub fn sicor_hat_with<E: Executor>(
    sample: &PairedSample,
    alpha: AlphaParam,
    config: &EstimatorConfig,
    exec: &E,
) -> Result<EstimatorReport> {
    let terms = term_statistics_with(sample, alpha, config, exec)?;
    let mode = config.resolve_mode(sample.n(), sample.p(), alpha);
    let constant = sample.x_is_constant() || sample.y_is_constant();
    sicor_from_terms(terms, mode, sample.n(), constant, config.clamp_correlation)
}

/// V-statistic siCov for one-dimensional margins via the sorted path.
///
/// Biased by O(1/n) relative to the U-statistic. Only α = 1 has the sorted
/// form; other exponents are rejected.
pub fn sicov_v_fast_1d(sample: &PairedSample, alpha: AlphaParam) -> Result<EstimatorReport> {
    sicov_hat(sample, alpha, &EstimatorConfig::with_mode(Mode::VFast))
}

/// Sample distance covariance and distance correlation at exponent 1.
///
/// Uses the double-centred distance matrices `A`, `B`, evaluated row by row
/// so memory stays O(n):
/// `dCov² = n⁻² Σ A_ij B_ij`, `dCor² = dCov² / √(dVar²(X) dVar²(Y))`.
/// The returned values are the square roots `dCov` and `dCor`.
pub fn dcov_dcor_baseline(sample: &PairedSample) -> Result<(DependenceEstimate, DependenceEstimate)> {
    let n = sample.n();
    crate::kernels::require_rows("distance covariance", 2, n)?;
    let dist = |a: &[f64], b: &[f64]| math::sqrt(a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum());
    let dx = |i: usize, j: usize| dist(sample.x_row(i), sample.x_row(j));
    let dy = |i: usize, j: usize| dist(sample.y_row(i), sample.y_row(j));

    let means = |d: &dyn Fn(usize, usize) -> f64| -> (Vec<f64>, f64) {
        let rows: Vec<f64> = (0..n).map(|i| math::sum((0..n).map(|j| d(i, j))) / n as f64).collect();
        let grand = math::sum(rows.iter().copied()) / n as f64;
        (rows, grand)
    };
    let (ax, gx) = means(&dx);
    let (ay, gy) = means(&dy);

    let (mut xy, mut xx, mut yy) = (Sum::default(), Sum::default(), Sum::default());
    for i in 0..n {
        for j in 0..n {
            let a = dx(i, j) - ax[i] - ax[j] + gx;
            let b = dy(i, j) - ay[i] - ay[j] + gy;
            xy.add(a * b);
            xx.add(a * a);
            yy.add(b * b);
        }
    }
    let nn = (n * n) as f64;
    let (v_xy, v_xx, v_yy) = (xy.value() / nn, xx.value() / nn, yy.value() / nn);
    let dcov2 = v_xy.max(0.0);
    let denom = v_xx * v_yy;
    let dcor2 = if denom > 0.0 { dcov2 / math::sqrt(denom) } else { 0.0 };
    let cov = DependenceEstimate::new(math::sqrt(dcov2), EstimateKind::DCov, 1.0, Basis::Classical, n);
    let cor = DependenceEstimate::new(math::sqrt(dcor2), EstimateKind::DCor, 1.0, Basis::Classical, n);
    Ok((cov, cor))
}

/// Product-moment correlation of one-dimensional margins.
pub fn pearson_baseline(sample: &PairedSample) -> Result<DependenceEstimate> {
    if sample.p() != 1 {
        return Err(Error::NotOneDimensional { what: "Pearson correlation", p: sample.p() });
    }
    let n = sample.n();
    let (x, y) = (sample.x(), sample.y());
    let mx = math::sum(x.iter().copied()) / n as f64;
    let my = math::sum(y.iter().copied()) / n as f64;
    let sxy = math::sum(x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)));
    let sxx = math::sum(x.iter().map(|a| (a - mx) * (a - mx)));
    let syy = math::sum(y.iter().map(|b| (b - my) * (b - my)));
    if sxx <= 0.0 {
        return Err(Error::ZeroVariance { margin: "x" });
    }
    if syy <= 0.0 {
        return Err(Error::ZeroVariance { margin: "y" });
    }
    let r = (sxy / math::sqrt(sxx * syy)).clamp(-1.0, 1.0);
    Ok(DependenceEstimate::new(r, EstimateKind::Pearson, 1.0, Basis::Classical, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sample(x: &[f64], y: &[f64]) -> PairedSample {
        PairedSample::from_columns(x, y).unwrap()
    }

    #[test]
    fn pearson_examples() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let up: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        let down: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson_baseline(&sample(&x, &up)).unwrap().value - 1.0).abs() < 1e-15);
        assert!((pearson_baseline(&sample(&x, &down)).unwrap().value + 1.0).abs() < 1e-15);
        // means 3 and 4.2; Sxy = 8, Sxx = 10, Syy = 8.8
        let y = [2.0, 4.0, 5.0, 4.0, 6.0];
        let expected = 8.0 / (10.0f64 * 8.8).sqrt();
        assert!((pearson_baseline(&sample(&x, &y)).unwrap().value - expected).abs() < 1e-14);
        assert!(matches!(
            pearson_baseline(&sample(&x, &[1.0; 5])),
            Err(Error::ZeroVariance { margin: "y" })
        ));
    }

    #[test]
    fn constant_margin_sicor_is_zero_with_warning() {
        let s = sample(&[1.0, 2.0, 4.0, 8.0, 3.0], &[5.0; 5]);
        let r = sicor_hat(&s, AlphaParam::ONE, &EstimatorConfig::default()).unwrap();
        assert_eq!(r.estimate.value, 0.0);
        assert_eq!(r.estimate.warnings, vec![Warning::ConstantMargin]);
    }

    #[test]
    fn identical_rows_give_zero_terms() {
        let s = sample(&[2.0; 6], &[-1.0; 6]);
        for mode in [Mode::UComplete, Mode::UIncomplete, Mode::VFast] {
            let cfg = EstimatorConfig::with_mode(mode).budget(500);
            let r = sicov_hat(&s, AlphaParam::ONE, &cfg).unwrap();
            let t = r.terms;
            assert_eq!([t.j1, t.j2, t.j3, t.k1, t.k2, t.k3], [0.0; 6], "{mode}");
        }
    }

    #[test]
    fn dcor_of_margin_with_itself_is_one() {
        let x = [0.3, -1.2, 2.2, 0.9, -0.4, 1.7];
        let (_, cor) = dcov_dcor_baseline(&sample(&x, &x)).unwrap();
        assert!((cor.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn v_fast_rejects_other_shapes() {
        let s = PairedSample::new(vec![0.0, 1.0, 2.0, 3.0], vec![1.0, 0.0, 2.0, 2.0], 2).unwrap();
        assert!(matches!(sicov_v_fast_1d(&s, AlphaParam::ONE), Err(Error::NotOneDimensional { .. })));
        let s = sample(&[0.0, 1.0, 2.0], &[1.0, 0.0, 2.0]);
        assert!(matches!(
            sicov_v_fast_1d(&s, AlphaParam::new(0.5).unwrap()),
            Err(Error::FastPathAlpha { .. })
        ));
        assert_eq!(sicov_v_fast_1d(&sample(&[1.0; 3], &[2.0; 3]), AlphaParam::ONE).unwrap().estimate.value, 0.0);
    }

    #[test]
    fn too_few_rows_for_u_mode() {
        let s = sample(&[0.0, 1.0, 2.0], &[1.0, 0.0, 2.0]);
        let err = sicov_hat(&s, AlphaParam::ONE, &EstimatorConfig::with_mode(Mode::UComplete)).unwrap_err();
        assert!(matches!(err, Error::TooFewRows { needed: 4, got: 3, .. }));
        let err = sicov_hat(&s, AlphaParam::ONE, &EstimatorConfig::with_mode(Mode::UIncomplete).budget(0)).unwrap_err();
        assert_eq!(err, Error::ZeroBudget);
    }
}
