//! Adaptive Gauss–Kronrod (7-point Gauss / 21-point Kronrod pair, QUADPACK
//! constants) and Wynn's ε-algorithm for oscillatory tails.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::math;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_029_992,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights for XGK[1], XGK[3], …, XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

/// One Gauss–Kronrod 21 panel: (Kronrod value, error estimate).
pub(crate) fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kron = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_k = kron.abs();
    let mut fv = [(0.0, 0.0); 10];
    for (j, &x) in XGK[..10].iter().enumerate() {
        let dx = half * x;
        let (f1, f2) = (f(centre - dx), f(centre + dx));
        fv[j] = (f1, f2);
        kron += WGK[j] * (f1 + f2);
        abs_k += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut asc = WGK[10] * (fc - mean).abs();
    for (j, &(f1, f2)) in fv.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let (result, abs_k, asc) = (kron * half, abs_k * half.abs(), asc * half.abs());
    let mut err = ((kron - gauss) * half).abs();
    if asc != 0.0 && err != 0.0 {
        err = asc * math::powf(200.0 * err / asc, 1.5).min(1.0);
    }
    if abs_k > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * abs_k);
    }
    (result, err)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive integration of `f` over `[a, b]`: the panel with the
/// largest error estimate is bisected until the total error is below
/// `max(abs_tol, rel_tol·|I|)` or `limit` panels exist.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64, limit: usize) -> Result<Integral> {
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0, intervals: 0 });
    }
    let (value, error) = gk21(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let (mut total, mut total_err) = (value, error);
    let mut panels = 1usize;
    loop {
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            break;
        }
        if panels >= limit {
            return Err(Error::QuadratureNotConverged { error: total_err, intervals: panels });
        }
        let worst = heap.pop().expect("heap holds every panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel cannot be split further in floating point
            heap.push(worst);
            return Err(Error::QuadratureNotConverged { error: total_err, intervals: panels });
        }
        let (v1, e1) = gk21(&f, worst.a, mid);
        let (v2, e2) = gk21(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
        panels += 1;
    }
    // re-add from the panels to limit drift in the running totals
    let value = math::sum(heap.iter().map(|p| p.value));
    let error = math::sum(heap.iter().map(|p| p.error));
    Ok(Integral { value, error, intervals: panels })
}

/// Wynn's ε-algorithm on partial sums; returns (limit estimate, error estimate).
pub(crate) fn wynn_epsilon(partial: &[f64]) -> (f64, f64) {
    let m = partial.len();
    if m < 3 {
        let last = partial.last().copied().unwrap_or(0.0);
        let prev = if m >= 2 { partial[m - 2] } else { 0.0 };
        return (last, (last - prev).abs());
    }
    // columns ε_{-1} = 0, ε_0 = S; even columns hold the estimates
    let mut prev: Vec<f64> = alloc::vec![0.0; m + 1];
    let mut cur: Vec<f64> = partial.to_vec();
    let mut best = (partial[m - 1], (partial[m - 1] - partial[m - 2]).abs());
    let mut col = 0usize;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            let inv = if diff == 0.0 { f64::INFINITY } else { 1.0 / diff };
            next.push(prev[i + 1] + inv);
        }
        col += 1;
        prev = cur;
        cur = next;
        if col % 2 == 0 && cur.len() >= 2 {
            let k = cur.len();
            let (a, b) = (cur[k - 1], cur[k - 2]);
            if a.is_finite() && b.is_finite() {
                let err = (a - b).abs();
                if err < best.1 {
                    best = (a, err);
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn polynomial_exactness() {
        for d in 0..=31 {
            let (v, _) = gk21(&|x: f64| x.powi(d), -1.0, 1.0);
            let exact = if d % 2 == 0 { 2.0 / (d + 1) as f64 } else { 0.0 };
            assert!((v - exact).abs() < 1e-14, "degree {d}: {v}");
        }
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, 1e-12, 1e-10, 1000).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn limit_is_reported() {
        let err = integrate(|x: f64| (1.0 / x).sin() / x, 1e-6, 1.0, 1e-14, 1e-14, 5).unwrap_err();
        assert!(matches!(err, Error::QuadratureNotConverged { intervals: 5, .. }));
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        // 1 − 1/3 + 1/5 − … = π/4
        let mut s = 0.0;
        let partial: Vec<f64> = (0..20)
            .map(|k| {
                s += if k % 2 == 0 { 1.0 } else { -1.0 } / (2 * k + 1) as f64;
                s
            })
            .collect();
        let (v, _) = wynn_epsilon(&partial);
        assert!((v - PI / 4.0).abs() < 1e-12, "{v}");
    }
}
