#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sicov_core::PairedSample;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rows with mild dependence between the margins.
pub fn random_sample(n: usize, p: usize, seed: u64) -> PairedSample {
    let mut r = rng(seed);
    let mut x = Vec::with_capacity(n * p);
    let mut y = Vec::with_capacity(n * p);
    for _ in 0..n * p {
        let a: f64 = r.random_range(-2.0..2.0);
        let b: f64 = r.random_range(-2.0..2.0);
        x.push(a);
        y.push(0.6 * a * a + 0.4 * b);
    }
    PairedSample::new(x, y, p).unwrap()
}

fn norm(v: &[f64], alpha: f64) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt().powf(alpha)
}

fn combo(a: &[f64], b: &[f64], c: &[f64], d: &[f64], sa: f64, sb: f64, sc: f64, sd: f64, alpha: f64) -> f64 {
    let v: Vec<f64> = (0..a.len()).map(|k| sa * a[k] + sb * b[k] + sc * c[k] + sd * d[k]).collect();
    norm(&v, alpha)
}

/// Six terms straight from their definitions, `distinct` selecting U over V.
pub fn naive_terms(s: &PairedSample, alpha: f64, distinct: bool) -> [f64; 6] {
    let n = s.n();
    let x = |i: usize| s.x_row(i);
    let y = |i: usize| s.y_row(i);
    let ok2 = |i: usize, j: usize| !distinct || i != j;
    let ok3 = |i: usize, j: usize, k: usize| !distinct || (i != j && j != k && i != k);
    let ok4 = |i: usize, j: usize, k: usize, l: usize| ok3(i, j, k) && (!distinct || (l != i && l != j && l != k));
    let mut t = [0.0; 6];
    let mut c = [0usize; 3];
    for i in 0..n {
        for j in 0..n {
            if ok2(i, j) {
                t[2] += combo(x(i), y(i), x(j), y(j), 1.0, 1.0, -1.0, -1.0, alpha);
                t[3] += combo(x(i), x(j), x(i), x(i), 1.0, -1.0, 0.0, 0.0, alpha);
                t[4] += combo(y(i), y(j), y(i), y(i), 1.0, -1.0, 0.0, 0.0, alpha);
                c[0] += 1;
            }
            for k in 0..n {
                if ok3(i, j, k) {
                    t[0] += combo(x(i), y(i), x(j), y(k), 1.0, 1.0, -1.0, -1.0, alpha);
                    c[1] += 1;
                }
                for l in 0..n {
                    if ok4(i, j, k, l) {
                        t[1] += combo(x(i), y(j), x(k), y(l), 1.0, 1.0, -1.0, -1.0, alpha);
                        t[5] += combo(x(i), x(j), y(k), y(l), 1.0, -1.0, 1.0, -1.0, alpha);
                        c[2] += 1;
                    }
                }
            }
        }
    }
    [t[0] / c[1] as f64, t[1] / c[2] as f64, t[2] / c[0] as f64, t[3] / c[0] as f64, t[4] / c[0] as f64, t[5] / c[2] as f64]
}

pub fn naive_sicov(s: &PairedSample, alpha: f64, distinct: bool) -> f64 {
    let t = naive_terms(s, alpha, distinct);
    2.0 * t[0] - t[1] - t[2]
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}
