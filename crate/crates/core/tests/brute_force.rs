mod common;

use common::{close, naive_terms, random_sample};
use sicov_core::estimators::{sicov_hat, sicov_v_fast_1d};
use sicov_core::kernels::{k1_hat, kernel_k, term_statistics, Obs};
use sicov_core::{AlphaParam, EstimatorConfig, Mode, PairedSample};

fn kernel_average(s: &PairedSample, alpha: f64) -> f64 {
    let n = s.n();
    let (mut sum, mut count) = (0.0, 0usize);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    sum += kernel_k([Obs::row(s, a), Obs::row(s, b), Obs::row(s, c), Obs::row(s, d)], alpha);
                    count += 1;
                }
            }
        }
    }
    sum / count as f64
}

fn u_config() -> EstimatorConfig {
    EstimatorConfig::with_mode(Mode::UComplete)
}

#[test]
fn u_complete_equals_kernel_average() {
    for (n, p, alpha, seed) in [(6, 1, 1.0, 1), (8, 1, 1.0, 2), (6, 1, 0.6, 3), (8, 2, 1.3, 4), (7, 3, 1.0, 5), (8, 1, 1.9, 6)] {
        let s = random_sample(n, p, seed);
        let a = AlphaParam::new(alpha).unwrap();
        let u = sicov_hat(&s, a, &u_config()).unwrap().estimate.value;
        let k = kernel_average(&s, alpha);
        assert!((u - k).abs() < 1e-12, "n={n} p={p} alpha={alpha}: {u} vs {k}");
    }
}

#[test]
fn terms_match_definitions() {
    for (n, p, alpha, seed) in [(7, 1, 1.0, 10), (7, 1, 0.5, 11), (6, 2, 1.0, 12), (6, 2, 1.7, 13)] {
        let s = random_sample(n, p, seed);
        let t = term_statistics(&s, AlphaParam::new(alpha).unwrap(), &u_config()).unwrap();
        let want = naive_terms(&s, alpha, true);
        let got = [t.j1, t.j2, t.j3, t.k1, t.k2, t.k3];
        for (g, w) in got.iter().zip(want) {
            assert!(close(*g, w, 1e-12), "n={n} p={p} alpha={alpha}: {got:?} vs {want:?}");
        }
    }
}

#[test]
fn v_fast_equals_naive_v() {
    for seed in [20, 21, 22] {
        let s = random_sample(30, 1, seed);
        let t = term_statistics(&s, AlphaParam::ONE, &EstimatorConfig::with_mode(Mode::VFast)).unwrap();
        let want = naive_terms(&s, 1.0, false);
        let got = [t.j1, t.j2, t.j3, t.k1, t.k2, t.k3];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-10, "{got:?} vs {want:?}");
        }
        let v = sicov_v_fast_1d(&s, AlphaParam::ONE).unwrap().estimate.value;
        assert!((v - (2.0 * want[0] - want[1] - want[2])).abs() < 1e-10);
    }
}

#[test]
fn sorted_u_path_matches_enumeration_at_larger_n() {
    // exact U at α = 1 by enumeration versus the sorted formulas
    let s = random_sample(14, 1, 30);
    let sorted = term_statistics(&s, AlphaParam::ONE, &u_config()).unwrap();
    let want = naive_terms(&s, 1.0, true);
    let got = [sorted.j1, sorted.j2, sorted.j3, sorted.k1, sorted.k2, sorted.k3];
    for (g, w) in got.iter().zip(want) {
        assert!(close(*g, w, 1e-12), "{got:?} vs {want:?}");
    }
}

#[test]
fn projection_is_conditional_kernel_mean() {
    let s = random_sample(9, 1, 40);
    let n = s.n();
    for i in [0, 4, 8] {
        let mut sum = 0.0;
        let mut count = 0;
        for j in 0..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    if [j, k, l].contains(&i) {
                        continue;
                    }
                    sum += kernel_k([Obs::row(&s, i), Obs::row(&s, j), Obs::row(&s, k), Obs::row(&s, l)], 0.8);
                    count += 1;
                }
            }
        }
        let exact = k1_hat(&s, i, 0.8, 1_000_000, 1).unwrap();
        assert!((exact - sum / count as f64).abs() < 1e-12);
    }
    // the projections average to the U-statistic
    let mean: f64 = (0..n).map(|i| k1_hat(&s, i, 0.8, 1_000_000, 1).unwrap()).sum::<f64>() / n as f64;
    let u = sicov_hat(&s, AlphaParam::new(0.8).unwrap(), &u_config()).unwrap().estimate.value;
    assert!((mean - u).abs() < 1e-12);
}

#[test]
fn incomplete_mode_approaches_complete() {
    let s = random_sample(40, 2, 50);
    let a = AlphaParam::new(1.2).unwrap();
    let exact = sicov_hat(&s, a, &u_config()).unwrap().estimate.value;
    let cfg = EstimatorConfig::with_mode(Mode::UIncomplete).budget(400_000);
    let approx = sicov_hat(&s, a, &cfg).unwrap().estimate.value;
    let scale = term_statistics(&s, a, &u_config()).unwrap().j2;
    assert!((exact - approx).abs() < 0.01 * scale, "{exact} vs {approx}");
}
