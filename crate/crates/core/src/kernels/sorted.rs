//! Exact O(n² log n) term sums for one-dimensional margins at α = 1.
//!
//! With `w_{ij} = xᵢ + yⱼ` the quadruple sum `Σ |xᵢ + yⱼ − x_k − y_l|` over
//! all index tuples is the sum of pairwise gaps of the n² values `w`, which
//! one sort turns into a weighted sum. The triple sum `Σ |sᵢ − w_{kl}|`
//! (`s = x + y`) is a sorted sweep of the `s` values against `w`. The
//! distinct-index (U) sums follow by inclusion–exclusion over the set
//! partitions of the index tuple; every collapsed sum is again one of
//! these sorted forms, the only new ones being over `d = x − y` and the
//! n² values `v_{ij} = xᵢ − yⱼ`.

use alloc::vec::Vec;

use super::terms::{Convention, TermStatistics, TupleCounts};
use crate::math::Sum;

/// Σ_{a,b} |v_a − v_b| over ordered pairs of an ascending slice.
pub(crate) fn ordered_gap_sum(sorted: &[f64]) -> f64 {
    let m = sorted.len() as f64;
    let mut acc = Sum::default();
    for (r, &v) in sorted.iter().enumerate() {
        acc.add(v * (2.0 * r as f64 - m + 1.0));
    }
    2.0 * acc.value()
}

/// Σ_q Σ_w |q − w| for ascending `queries` and ascending `reference`.
fn sweep_abs_dev(queries: &[f64], reference: &[f64]) -> f64 {
    let total: f64 = reference.iter().copied().collect::<Sum>().value();
    let m = reference.len() as f64;
    let mut below = Sum::default();
    let mut count = 0usize;
    let mut acc = Sum::default();
    for &q in queries {
        while count < reference.len() && reference[count] <= q {
            below.add(reference[count]);
            count += 1;
        }
        let lo = below.value();
        let c = count as f64;
        acc.add(q * c - lo);
        acc.add((total - lo) - q * (m - c));
    }
    acc.value()
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_unstable_by(f64::total_cmp);
    v
}

fn centred(v: &[f64]) -> Vec<f64> {
    let mean = v.iter().copied().collect::<Sum>().value() / v.len() as f64;
    v.iter().map(|a| a - mean).collect()
}

fn outer(x: &[f64], y: &[f64], op: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for &a in x {
        out.extend(y.iter().map(|&b| op(a, b)));
    }
    out
}

/// Full (with-repetition) sums; the U forms are recovered from these.
#[derive(Debug, Clone, Copy)]
struct FullSums {
    n: usize,
    /// Σ_{i,k} |xᵢ − x_k|
    px: f64,
    /// Σ_{j,l} |yⱼ − y_l|
    py: f64,
    /// Σ_{i,k} |sᵢ − s_k|
    ps: f64,
    /// Σ_i Σ_{k,l} |sᵢ − x_k − y_l|
    q1: f64,
    /// Σ_{i,j,k,l} |xᵢ + yⱼ − x_k − y_l|
    f: f64,
    /// Σ_{i,k} |dᵢ − d_k|, U only
    pd: f64,
    /// Σ_j Σ_{i,l} |dⱼ − (xᵢ − y_l)|, U only
    q2: f64,
}

impl FullSums {
    fn compute(x: &[f64], y: &[f64], with_differences: bool) -> Self {
        let x = centred(x);
        let y = centred(y);
        let n = x.len();
        let px = ordered_gap_sum(&sorted(x.clone()));
        let py = ordered_gap_sum(&sorted(y.clone()));
        let s = sorted(x.iter().zip(&y).map(|(a, b)| a + b).collect());
        let ps = ordered_gap_sum(&s);
        let (f, q1) = {
            let w = sorted(outer(&x, &y, |a, b| a + b));
            (ordered_gap_sum(&w), sweep_abs_dev(&s, &w))
        };
        let (pd, q2) = if with_differences {
            let d = sorted(x.iter().zip(&y).map(|(a, b)| a - b).collect());
            let v = sorted(outer(&x, &y, |a, b| a - b));
            (ordered_gap_sum(&d), sweep_abs_dev(&d, &v))
        } else {
            (0.0, 0.0)
        };
        FullSums { n, px, py, ps, q1, f, pd, q2 }
    }

    fn v_terms(&self) -> TermStatistics {
        let n = self.n as f64;
        let (n2, n3, n4) = (n * n, n * n * n, n * n * n * n);
        let j2 = self.f / n4;
        TermStatistics {
            j1: self.q1 / n3,
            j2,
            j3: self.ps / n2,
            k1: self.px / n2,
            k2: self.py / n2,
            k3: j2,
            convention: Convention::V,
            tuples: TupleCounts::with_repetition(self.n),
            alpha: 1.0,
        }
    }

    fn u_terms(&self) -> TermStatistics {
        let n = self.n as f64;
        let n2 = n * (n - 1.0);
        let n3 = n2 * (n - 2.0);
        let n4 = n3 * (n - 3.0);
        let j1 = (self.q1 - self.px - self.py - self.ps) / n3;
        let j2 = (self.f - 2.0 * self.q1 - 2.0 * self.q2 + self.ps + self.pd + (4.0 - n) * (self.px + self.py)) / n4;
        TermStatistics {
            j1,
            j2,
            j3: self.ps / n2,
            k1: self.px / n2,
            k2: self.py / n2,
            k3: j2,
            convention: Convention::U,
            tuples: TupleCounts::distinct(self.n),
            alpha: 1.0,
        }
    }
}

/// U-statistic terms (n ≥ 4) for 1-D margins at α = 1.
pub(crate) fn u_terms(x: &[f64], y: &[f64]) -> TermStatistics {
    FullSums::compute(x, y, true).u_terms()
}

/// V-statistic terms for 1-D margins at α = 1.
pub(crate) fn v_terms(x: &[f64], y: &[f64]) -> TermStatistics {
    FullSums::compute(x, y, false).v_terms()
}

/// Ascending values with compensated prefix sums, for repeated queries.
#[derive(Debug, Clone)]
struct Indexed {
    values: Vec<f64>,
    prefix: Vec<f64>,
}

impl Indexed {
    fn new(values: Vec<f64>) -> Self {
        let values = sorted(values);
        let mut prefix = Vec::with_capacity(values.len() + 1);
        let mut acc = Sum::default();
        prefix.push(0.0);
        for &v in &values {
            acc.add(v);
            prefix.push(acc.value());
        }
        Indexed { values, prefix }
    }

    /// Σ_w |q − w|.
    fn abs_dev(&self, q: f64) -> f64 {
        let m = self.values.len();
        let c = self.values.partition_point(|&w| w <= q);
        let lo = self.prefix[c];
        let hi = self.prefix[m] - lo;
        (q * c as f64 - lo) + (hi - q * (m - c) as f64)
    }
}

/// Re-pairing cache for permutation tests on 1-D data at α = 1.
///
/// Permuting y leaves the multisets `{xᵢ + yⱼ}` and `{xᵢ − yⱼ}` and the
/// margin-only sums unchanged, so only the O(n log n) paired parts are
/// recomputed per permutation.
#[derive(Debug, Clone)]
pub struct PairingCache {
    x: Vec<f64>,
    y: Vec<f64>,
    convention: Convention,
    sums: Indexed,
    diffs: Option<Indexed>,
    px: f64,
    py: f64,
    f: f64,
}

impl PairingCache {
    pub(crate) fn new(x: &[f64], y: &[f64], convention: Convention) -> Self {
        let x = centred(x);
        let y = centred(y);
        let px = ordered_gap_sum(&sorted(x.clone()));
        let py = ordered_gap_sum(&sorted(y.clone()));
        let sums = Indexed::new(outer(&x, &y, |a, b| a + b));
        let f = ordered_gap_sum(&sums.values);
        let diffs = (convention == Convention::U).then(|| Indexed::new(outer(&x, &y, |a, b| a - b)));
        PairingCache { x, y, convention, sums, diffs, px, py, f }
    }

    /// Terms for the pairing `(xᵢ, y_{perm[i]})`; `None` is the identity.
    pub(crate) fn terms(&self, perm: Option<&[usize]>) -> TermStatistics {
        let n = self.x.len();
        let yp = |i: usize| match perm {
            Some(p) => self.y[p[i]],
            None => self.y[i],
        };
        let s = sorted((0..n).map(|i| self.x[i] + yp(i)).collect());
        let ps = ordered_gap_sum(&s);
        let q1 = s.iter().map(|&q| self.sums.abs_dev(q)).collect::<Sum>().value();
        let (pd, q2) = match &self.diffs {
            Some(diffs) => {
                let d = sorted((0..n).map(|i| self.x[i] - yp(i)).collect());
                (ordered_gap_sum(&d), d.iter().map(|&q| diffs.abs_dev(q)).collect::<Sum>().value())
            }
            None => (0.0, 0.0),
        };
        let full = FullSums { n, px: self.px, py: self.py, ps, q1, f: self.f, pd, q2 };
        match self.convention {
            Convention::U => full.u_terms(),
            _ => full.v_terms(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn gap_sum_matches_double_loop() {
        let v: Vec<f64> = vec![3.0, -1.0, 2.5, 2.5, 7.0, 0.0];
        let brute: f64 = v.iter().flat_map(|a| v.iter().map(move |b| (a - b).abs())).sum();
        assert!((ordered_gap_sum(&sorted(v)) - brute).abs() < 1e-12);
    }

    #[test]
    fn sweep_and_index_agree() {
        let q = sorted(vec![0.5, -2.0, 4.0, 1.0]);
        let r = vec![1.0, 3.0, -1.0, 0.0, 1.0, 10.0];
        let brute: f64 = q.iter().flat_map(|a| r.iter().map(move |b| (a - b).abs())).sum();
        assert!((sweep_abs_dev(&q, &sorted(r.clone())) - brute).abs() < 1e-12);
        let idx = Indexed::new(r);
        let via_index: f64 = q.iter().map(|&a| idx.abs_dev(a)).sum();
        assert!((via_index - brute).abs() < 1e-12);
    }
}
