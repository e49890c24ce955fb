use alloc::vec::Vec;

use rand::Rng;

use super::norm::Power;
use super::sorted;
use crate::config::{EstimatorConfig, Mode};
use crate::error::{Error, Result};
use crate::exec::{Executor, Sequential};
use crate::math::Sum;
use crate::rng::{substream, Stream};
use crate::{AlphaParam, PairedSample};

/// Tuples per work unit in incomplete mode. Part of the reproducibility
/// contract: changing it changes incomplete-mode estimates.
pub const SAMPLING_CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Distinct indices only.
    U,
    /// Indices with repetition.
    V,
    /// Exact expectations under a known law.
    Population,
}

/// Number of tuples averaged for the pair (J₃, K₁, K₂), triple (J₁) and
/// quadruple (J₂, K₃) term families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleCounts {
    pub pairs: u64,
    pub triples: u64,
    pub quadruples: u64,
}

impl TupleCounts {
    pub fn distinct(n: usize) -> Self {
        let n = n as u64;
        let pairs = n * n.saturating_sub(1);
        let triples = pairs.saturating_mul(n.saturating_sub(2));
        TupleCounts { pairs, triples, quadruples: triples.saturating_mul(n.saturating_sub(3)) }
    }

    pub fn with_repetition(n: usize) -> Self {
        let n = n as u64;
        TupleCounts { pairs: n * n, triples: n * n * n, quadruples: (n * n).saturating_mul(n * n) }
    }

    pub fn sampled(budget: u64) -> Self {
        TupleCounts { pairs: budget, triples: budget, quadruples: budget }
    }
}

/// The six moment terms
///
/// ```text
/// J₁ = E|X₁+Y₁−X₂−Y₃|^α   J₂ = E|X₁+Y₂−X₃−Y₄|^α   J₃ = E|X₁+Y₁−X₂−Y₂|^α
/// K₁ = E|X₁−X₂|^α         K₂ = E|Y₃−Y₄|^α         K₃ = E|X₁−X₂+Y₃−Y₄|^α
/// ```
///
/// with `siCov = 2J₁ − J₂ − J₃` and siCor denominator `K₁ + K₂ − K₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermStatistics {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub convention: Convention,
    pub tuples: TupleCounts,
    pub alpha: f64,
}

impl TermStatistics {
    pub fn sicov(&self) -> f64 {
        2.0 * self.j1 - self.j2 - self.j3
    }

    pub fn denominator(&self) -> f64 {
        self.k1 + self.k2 - self.k3
    }
}

/// Moment terms of a sample, in the mode selected by `config`.
pub fn term_statistics(sample: &PairedSample, alpha: AlphaParam, config: &EstimatorConfig) -> Result<TermStatistics> {
    term_statistics_with(sample, alpha, config, &Sequential)
}

pub fn term_statistics_with<E: Executor>(
    sample: &PairedSample,
    alpha: AlphaParam,
    config: &EstimatorConfig,
    exec: &E,
) -> Result<TermStatistics> {
    config.validate()?;
    let n = sample.n();
    let p = sample.p();
    match config.resolve_mode(n, p, alpha) {
        Mode::UComplete => {
            require_rows("U-statistic terms", 4, n)?;
            if p == 1 && alpha.is_one() {
                Ok(sorted::u_terms(sample.x(), sample.y()))
            } else {
                Ok(enumerate_distinct(sample, alpha, exec))
            }
        }
        Mode::UIncomplete => {
            require_rows("U-statistic terms", 4, n)?;
            if config.tuple_budget == 0 {
                return Err(Error::ZeroBudget);
            }
            Ok(sample_distinct(sample, alpha, config.tuple_budget, config.seed, exec))
        }
        Mode::VFast => {
            if p != 1 {
                return Err(Error::NotOneDimensional { what: "the v-fast path", p });
            }
            if !alpha.is_one() {
                return Err(Error::FastPathAlpha { alpha: alpha.get() });
            }
            Ok(sorted::v_terms(sample.x(), sample.y()))
        }
    }
}

pub(crate) fn require_rows(what: &'static str, needed: usize, got: usize) -> Result<()> {
    if got < needed {
        Err(Error::TooFewRows { what, needed, got })
    } else {
        Ok(())
    }
}

fn row_sums(sample: &PairedSample) -> Vec<f64> {
    sample.x().iter().zip(sample.y()).map(|(a, b)| a + b).collect()
}

/// Complete enumeration over distinct index tuples; one work unit per
/// leading index.
fn enumerate_distinct<E: Executor>(sample: &PairedSample, alpha: AlphaParam, exec: &E) -> TermStatistics {
    let n = sample.n();
    let p = sample.p();
    let pw = Power::new(alpha.get());
    let s = row_sums(sample);
    let sr = |i: usize| &s[i * p..(i + 1) * p];
    let xr = |i: usize| sample.x_row(i);
    let yr = |i: usize| sample.y_row(i);

    let partial = exec.map(n, |i| {
        let mut acc = [Sum::default(); 6];
        for j in (0..n).filter(|&j| j != i) {
            acc[2].add(pw.diff(sr(i), sr(j)));
            acc[3].add(pw.diff(xr(i), xr(j)));
            acc[4].add(pw.diff(yr(i), yr(j)));
            for k in (0..n).filter(|&k| k != i && k != j) {
                acc[0].add(pw.triple(sr(i), xr(j), yr(k)));
                for l in (0..n).filter(|&l| l != i && l != j && l != k) {
                    acc[1].add(pw.combo(xr(i), yr(j), xr(k), yr(l)));
                    acc[5].add(pw.combo(xr(i), yr(k), xr(j), yr(l)));
                }
            }
        }
        acc.map(|a| a.value())
    });
    let mut tot = [Sum::default(); 6];
    for part in &partial {
        for (t, v) in tot.iter_mut().zip(part) {
            t.add(*v);
        }
    }
    let counts = TupleCounts::distinct(n);
    let [j1, j2, j3, k1, k2, k3] = tot.map(|t| t.value());
    TermStatistics {
        j1: j1 / counts.triples as f64,
        j2: j2 / counts.quadruples as f64,
        j3: j3 / counts.pairs as f64,
        k1: k1 / counts.pairs as f64,
        k2: k2 / counts.pairs as f64,
        k3: k3 / counts.quadruples as f64,
        convention: Convention::U,
        tuples: counts,
        alpha: alpha.get(),
    }
}

/// `k` distinct indices drawn uniformly from `0..n` (rejection on collision).
#[inline]
pub(crate) fn draw_distinct<const K: usize, R: Rng>(rng: &mut R, n: usize) -> [usize; K] {
    let mut idx = [0usize; K];
    let mut filled = 0;
    while filled < K {
        let c = rng.random_range(0..n);
        if !idx[..filled].contains(&c) {
            idx[filled] = c;
            filled += 1;
        }
    }
    idx
}

/// Incomplete U-statistic: `budget` uniformly drawn distinct tuples per term
/// family, one substream per (family, chunk).
fn sample_distinct<E: Executor>(
    sample: &PairedSample,
    alpha: AlphaParam,
    budget: u64,
    seed: u64,
    exec: &E,
) -> TermStatistics {
    let n = sample.n();
    let p = sample.p();
    let pw = Power::new(alpha.get());
    let s = row_sums(sample);
    let sr = |i: usize| &s[i * p..(i + 1) * p];
    let xr = |i: usize| sample.x_row(i);
    let yr = |i: usize| sample.y_row(i);
    let chunks = budget.div_ceil(SAMPLING_CHUNK) as usize;
    let chunk_len = |c: usize| SAMPLING_CHUNK.min(budget - c as u64 * SAMPLING_CHUNK);

    // unit u covers family u / chunks, chunk u % chunks
    let partial = exec.map(3 * chunks, |u| {
        let (family, c) = (u / chunks, u % chunks);
        let mut acc = [Sum::default(); 3];
        match family {
            0 => {
                let mut rng = substream(seed, Stream::PairTuples, c as u64);
                for _ in 0..chunk_len(c) {
                    let [i, j] = draw_distinct::<2, _>(&mut rng, n);
                    acc[0].add(pw.diff(sr(i), sr(j)));
                    acc[1].add(pw.diff(xr(i), xr(j)));
                    acc[2].add(pw.diff(yr(i), yr(j)));
                }
            }
            1 => {
                let mut rng = substream(seed, Stream::TripleTuples, c as u64);
                for _ in 0..chunk_len(c) {
                    let [i, j, k] = draw_distinct::<3, _>(&mut rng, n);
                    acc[0].add(pw.triple(sr(i), xr(j), yr(k)));
                }
            }
            _ => {
                let mut rng = substream(seed, Stream::QuadTuples, c as u64);
                for _ in 0..chunk_len(c) {
                    let [i, j, k, l] = draw_distinct::<4, _>(&mut rng, n);
                    acc[0].add(pw.combo(xr(i), yr(j), xr(k), yr(l)));
                    acc[1].add(pw.combo(xr(i), yr(k), xr(j), yr(l)));
                }
            }
        }
        acc.map(|a| a.value())
    });

    let fold = |family: usize, slot: usize| {
        partial[family * chunks..(family + 1) * chunks].iter().map(|a| a[slot]).collect::<Sum>().value()
            / budget as f64
    };
    TermStatistics {
        j1: fold(1, 0),
        j2: fold(2, 0),
        j3: fold(0, 0),
        k1: fold(0, 1),
        k2: fold(0, 2),
        k3: fold(2, 1),
        convention: Convention::U,
        tuples: TupleCounts::sampled(budget),
        alpha: alpha.get(),
    }
}
