//! Small descriptive statistics used by the inference and simulation code.

use crate::math::{self, Sum};

pub fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    math::sum(v.iter().copied()) / v.len() as f64
}

/// Unbiased sample variance (divisor `n − 1`).
pub fn variance(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return f64::NAN;
    }
    let m = mean(v);
    let ss: Sum = v.iter().map(|x| (x - m) * (x - m)).collect();
    ss.value() / (v.len() - 1) as f64
}

fn central_moments(v: &[f64]) -> (f64, f64, f64) {
    let m = mean(v);
    let n = v.len() as f64;
    let (mut m2, mut m3, mut m4) = (Sum::default(), Sum::default(), Sum::default());
    for x in v {
        let d = x - m;
        m2.add(d * d);
        m3.add(d * d * d);
        m4.add(d * d * d * d);
    }
    (m2.value() / n, m3.value() / n, m4.value() / n)
}

/// Moment skewness `g₁ = m₃ / m₂^{3/2}`.
pub fn skewness(v: &[f64]) -> f64 {
    let (m2, m3, _) = central_moments(v);
    m3 / math::powf(m2, 1.5)
}

/// Excess kurtosis `g₂ = m₄ / m₂² − 3`.
pub fn excess_kurtosis(v: &[f64]) -> f64 {
    let (m2, _, m4) = central_moments(v);
    m4 / (m2 * m2) - 3.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalityTest {
    pub statistic: f64,
    pub p_value: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

/// Jarque–Bera test; the statistic is asymptotically χ²(2), so `p = e^{−JB/2}`.
pub fn jarque_bera(v: &[f64]) -> NormalityTest {
    let n = v.len() as f64;
    let s = skewness(v);
    let k = excess_kurtosis(v);
    let statistic = n / 6.0 * (s * s + k * k / 4.0);
    NormalityTest { statistic, p_value: math::exp(-statistic / 2.0), skewness: s, excess_kurtosis: k }
}

/// Standard normal quantile (Wichura, AS 241, PPND16; relative accuracy about 1e-16).
pub fn normal_quantile(p: f64) -> f64 {
    if !(p > 0.0 && p < 1.0) {
        return match p {
            0.0 => f64::NEG_INFINITY,
            1.0 => f64::INFINITY,
            _ => f64::NAN,
        };
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let r = math::sqrt(-math::ln(r));
    let v = if r <= 5.0 {
        let r = r - 1.6;
        poly(&C, r) / poly(&D, r)
    } else {
        let r = r - 5.0;
        poly(&E, r) / poly(&F, r)
    };
    if q < 0.0 {
        -v
    } else {
        v
    }
}

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

fn poly(c: &[f64; 8], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

const A: [f64; 8] = [
    3.387_132_872_796_366_5,
    133.141_667_891_784_38,
    1_971.590_950_306_551_4,
    13_731.693_765_509_461,
    45_921.953_931_549_87,
    67_265.770_927_008_7,
    33_430.575_583_588_13,
    2_509.080_928_730_122_7,
];
const B: [f64; 8] = [
    1.0,
    42.313_330_701_600_91,
    687.187_007_492_057_9,
    5_394.196_021_424_751,
    21_213.794_301_586_597,
    39_307.895_800_092_71,
    28_729.085_735_721_943,
    5_226.495_278_852_545,
];
const C: [f64; 8] = [
    1.423_437_110_749_683_5,
    4.630_337_846_156_546,
    5.769_497_221_460_691,
    3.647_848_324_763_204_5,
    1.270_458_252_452_368_4,
    0.241_780_725_177_450_6,
    0.022_723_844_989_269_184,
    7.745_450_142_783_414e-4,
];
const D: [f64; 8] = [
    1.0,
    2.053_191_626_637_759,
    1.676_384_830_183_803_8,
    0.689_767_334_985_1,
    0.148_103_976_427_480_08,
    0.015_198_666_563_616_457,
    5.475_938_084_995_345e-4,
    1.050_750_071_644_416_9e-9,
];
const E: [f64; 8] = [
    6.657_904_643_501_103,
    5.463_784_911_164_114,
    1.784_826_539_917_291_3,
    0.296_560_571_828_504_9,
    0.026_532_189_526_576_124,
    0.001_242_660_947_388_078_4,
    2.711_555_568_743_487_6e-5,
    2.010_334_399_292_288_1e-7,
];
const F: [f64; 8] = [
    1.0,
    0.599_832_206_555_888,
    0.136_929_880_922_735_8,
    0.014_875_361_290_850_615,
    7.868_691_311_456_133e-4,
    1.846_318_317_510_054_8e-5,
    1.421_511_758_316_446e-7,
    2.044_263_103_389_939_7e-15,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_known_values() {
        assert!((normal_quantile(0.975) - 1.959_963_984_540_054).abs() < 1e-14);
        assert!((normal_quantile(0.5)).abs() < 1e-16);
        assert!((normal_quantile(1e-10) + 6.361_340_902_404_056).abs() < 1e-12);
        assert!((normal_quantile(0.995) - 2.575_829_303_548_901).abs() < 1e-14);
    }

    #[test]
    fn quantile_inverts_cdf() {
        for k in 1..200 {
            let p = k as f64 / 200.0;
            assert!((normal_cdf(normal_quantile(p)) - p).abs() < 1e-14);
        }
    }

    #[test]
    fn moments() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(mean(&v), 2.5);
        assert!((variance(&v) - 5.0 / 3.0).abs() < 1e-15);
        assert!(skewness(&v).abs() < 1e-15);
        assert!(skewness(&[0.0, 0.0, 0.0, 10.0]) > 0.0);
    }
}
