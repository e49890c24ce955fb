use super::norm::Power;
use super::terms::{draw_distinct, require_rows};
use crate::error::{Error, Result};
use crate::math::Sum;
use crate::rng::{substream, Stream};
use crate::PairedSample;

/// One paired observation.
#[derive(Debug, Clone, Copy)]
pub struct Obs<'a> {
    pub x: &'a [f64],
    pub y: &'a [f64],
}

impl<'a> Obs<'a> {
    pub fn row(sample: &'a PairedSample, i: usize) -> Self {
        Obs { x: sample.x_row(i), y: sample.y_row(i) }
    }
}

const TRIPLES: [[usize; 3]; 24] = {
    let mut out = [[0; 3]; 24];
    let mut m = 0;
    let mut i = 0;
    while i < 4 {
        let mut j = 0;
        while j < 4 {
            let mut k = 0;
            while k < 4 {
                if i != j && j != k && i != k {
                    out[m] = [i, j, k];
                    m += 1;
                }
                k += 1;
            }
            j += 1;
        }
        i += 1;
    }
    out
};

const PERMS: [[usize; 4]; 24] = {
    let mut out = [[0; 4]; 24];
    let mut m = 0;
    let mut t = 0;
    while t < 24 {
        let [i, j, k] = TRIPLES[t];
        out[m] = [i, j, k, 6 - i - j - k];
        m += 1;
        t += 1;
    }
    out
};

/// The symmetric order-4 kernel whose expectation is siCov:
///
/// ```text
/// k = 1/12 Σ_{i,j,k distinct} |xᵢ+yᵢ−xⱼ−y_k|^α
///   − 1/24 Σ_{i,j,k,l distinct} |xᵢ+yⱼ−x_k−y_l|^α
///   − 1/12 Σ_{i≠j} |xᵢ+yᵢ−xⱼ−yⱼ|^α
/// ```
///
/// The sums run over ordered tuples of positions in the quadruple (24, 24
/// and 12 terms), so each group averages to 2J₁, J₂ and J₃.
pub fn kernel_k(quad: [Obs<'_>; 4], alpha: f64) -> f64 {
    kernel_with(Power::new(alpha), &quad)
}

#[inline]
fn kernel_with(pw: Power, q: &[Obs<'_>; 4]) -> f64 {
    let p = q[0].x.len();
    if p == 1 {
        let s = [q[0].x[0] + q[0].y[0], q[1].x[0] + q[1].y[0], q[2].x[0] + q[2].y[0], q[3].x[0] + q[3].y[0]];
        let (x, y) = ([q[0].x[0], q[1].x[0], q[2].x[0], q[3].x[0]], [q[0].y[0], q[1].y[0], q[2].y[0], q[3].y[0]]);
        let mut a = 0.0;
        for [i, j, k] in TRIPLES {
            a += pw.of_abs(s[i] - x[j] - y[k]);
        }
        let mut b = 0.0;
        for [i, j, k, l] in PERMS {
            b += pw.of_abs(x[i] + y[j] - x[k] - y[l]);
        }
        let mut c = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    c += pw.of_abs(s[i] - s[j]);
                }
            }
        }
        return a / 12.0 - b / 24.0 - c / 12.0;
    }
    let mut a = 0.0;
    for [i, j, k] in TRIPLES {
        a += pw.combo(q[i].x, q[i].y, q[j].x, q[k].y);
    }
    let mut b = 0.0;
    for [i, j, k, l] in PERMS {
        b += pw.combo(q[i].x, q[j].y, q[k].x, q[l].y);
    }
    let mut c = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                c += pw.combo(q[i].x, q[i].y, q[j].x, q[j].y);
            }
        }
    }
    a / 12.0 - b / 24.0 - c / 12.0
}

/// Estimate of the first projection `k₁(zᵢ) = E k(zᵢ, Z₂, Z₃, Z₄)`.
///
/// Averages the kernel over `budget` uniformly drawn triples of other rows
/// (substream keyed by the row index), or over all `C(n−1, 3)` triples when
/// the budget covers them.
pub fn k1_hat(sample: &PairedSample, i: usize, alpha: f64, budget: u64, seed: u64) -> Result<f64> {
    Ok(k1_draws(sample, i, alpha, budget, seed)?.mean)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ProjectionDraws {
    pub mean: f64,
    /// Monte Carlo variance of `mean` (0 under complete enumeration).
    pub mc_variance: f64,
}

pub(crate) fn k1_draws(sample: &PairedSample, i: usize, alpha: f64, budget: u64, seed: u64) -> Result<ProjectionDraws> {
    let n = sample.n();
    require_rows("the first projection", 4, n)?;
    if i >= n {
        return Err(Error::RowOutOfRange { index: i, n });
    }
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let pw = Power::new(alpha);
    let me = Obs::row(sample, i);
    let m = (n - 1) as u64;
    let all = m * (m - 1) * (m - 2) / 6;

    if budget >= all {
        let others = || (0..n).filter(move |&r| r != i);
        let mut acc = Sum::default();
        for j in others() {
            for k in others().filter(|&k| k > j) {
                for l in others().filter(|&l| l > k) {
                    acc.add(kernel_with(pw, &[me, Obs::row(sample, j), Obs::row(sample, k), Obs::row(sample, l)]));
                }
            }
        }
        return Ok(ProjectionDraws { mean: acc.value() / all as f64, mc_variance: 0.0 });
    }

    let mut rng = substream(seed, Stream::ProjectionRow, i as u64);
    let mut acc = Sum::default();
    let mut sq = Sum::default();
    for _ in 0..budget {
        let [j, k, l] = loop {
            let t = draw_distinct::<3, _>(&mut rng, n);
            if !t.contains(&i) {
                break t;
            }
        };
        let v = kernel_with(pw, &[me, Obs::row(sample, j), Obs::row(sample, k), Obs::row(sample, l)]);
        acc.add(v);
        sq.add(v * v);
    }
    let b = budget as f64;
    let mean = acc.value() / b;
    let var = if budget > 1 { ((sq.value() - b * mean * mean) / (b - 1.0)).max(0.0) } else { 0.0 };
    Ok(ProjectionDraws { mean, mc_variance: var / b })
}
