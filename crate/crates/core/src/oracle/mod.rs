//! Independent reference values: characteristic-function quadrature for
//! discrete laws on ℝ, exact population moment terms, and closed forms.

mod closed_form;
mod law;
mod quadrature;

use alloc::vec::Vec;

pub use closed_form::{cauchy_closed_form, normal_closed_form, NormalClosedForm};
pub use law::{DiscreteJointLaw, DiscreteLaw};
pub use quadrature::{integrate, Integral};

use crate::error::{Error, Result};
use crate::kernels::{c_const, Convention, TermStatistics, TupleCounts};
use crate::math::{self, Sum};
use crate::AlphaParam;
use quadrature::{gk21, wynn_epsilon};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Adaptive quadrature runs on `(0, t_max]`; beyond it the integrand is
    /// integrated term by term from its trigonometric expansion.
    pub t_max: f64,
    /// Maximum number of panels per adaptive integration.
    pub subdivision_limit: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { rel_tol: 1e-8, abs_tol: 1e-10, t_max: 200.0, subdivision_limit: 20_000 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidQuadrature { reason: "tolerances must be positive" });
        }
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return Err(Error::InvalidQuadrature { reason: "t_max must be positive and finite" });
        }
        if self.subdivision_limit == 0 {
            return Err(Error::InvalidQuadrature { reason: "subdivision limit must be at least 1" });
        }
        Ok(())
    }
}

/// Result of a weighted characteristic-function integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: f64,
    /// Combined error estimate of all parts.
    pub error: f64,
    /// Contribution of `[t_max, ∞)`, already included in `value`.
    pub tail: f64,
    /// Crude bound on the tail from `g ≤ sup g`, for comparison with `tail`.
    pub tail_bound: f64,
    pub intervals: usize,
}

/// `g(t) = constant + Σ coef·cos(freq·t)` with `freq > 0`.
#[derive(Debug, Clone, Default)]
struct CosSeries {
    constant: f64,
    terms: Vec<(f64, f64)>,
}

impl CosSeries {
    fn sup(&self) -> f64 {
        self.constant.abs() + self.terms.iter().map(|t| t.1.abs()).sum::<f64>()
    }
}

fn same_freq(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Sort by frequency and add coefficients of equal frequencies; drops zeros.
fn merge(mut items: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    items.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(items.len());
    for (f, c) in items {
        match out.last_mut() {
            Some(last) if same_freq(last.0, f) => last.1 += c,
            _ => out.push((f, c)),
        }
    }
    let scale = out.iter().map(|t| t.1.abs()).fold(0.0, f64::max);
    out.retain(|t| t.1.abs() > 1e-15 * scale.max(f64::MIN_POSITIVE));
    out
}

/// `φ_{X+Y}(t) − φ_X(t)φ_Y(t) = Σ c·e^{iωt}` as merged (ω, c) pairs.
fn diagonal_defect(law: &DiscreteJointLaw) -> Vec<(f64, f64)> {
    let xs = law.x_marginal();
    let ys = law.y_marginal();
    let mut items: Vec<(f64, f64)> = law.atoms().iter().map(|&(x, y, p)| (x + y, p)).collect();
    for &(x, p) in xs.atoms() {
        for &(y, q) in ys.atoms() {
            items.push((x + y, -p * q));
        }
    }
    merge(items)
}

/// `|Σ c·e^{iωt}|²` expanded into a cosine series.
fn squared_modulus(defect: &[(f64, f64)]) -> CosSeries {
    let mut constant = Sum::default();
    let mut items = Vec::new();
    for (a, &(wa, ca)) in defect.iter().enumerate() {
        constant.add(ca * ca);
        for &(wb, cb) in &defect[a + 1..] {
            items.push(((wb - wa).abs(), 2.0 * ca * cb));
        }
    }
    CosSeries { constant: constant.value(), terms: merge(items) }
}

/// `∫_T^∞ cos(νt) t^{−s} dt` for `ν > 0`, `s > 1`.
fn cos_tail(nu: f64, t0: f64, s: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let x = nu * t0;
    if x >= 40.0 {
        // integrating by parts repeatedly:
        // ∫_T^∞ e^{iνt} t^{−s} dt = −e^{iνT} T^{−s}/(iν) · Σ_k (s)_k / (iνT)^k
        let (mut re, mut im) = (1.0, 0.0);
        let (mut tr, mut ti) = (1.0, 0.0);
        let mut last = 1.0f64;
        for k in 0..200 {
            // term *= (s+k) / (i x) = −i (s+k)/x
            let f = (s + k as f64) / x;
            let (nr, ni) = (ti * f, -tr * f);
            let mag = nr.abs() + ni.abs();
            if mag > last || mag < 1e-18 {
                break;
            }
            last = mag;
            tr = nr;
            ti = ni;
            re += tr;
            im += ti;
        }
        // prefactor −e^{iνT} T^{−s} / (iν) = i e^{iνT} T^{−s} / ν
        let (sn, cs) = math::sin_cos(x);
        let scale = math::powf(t0, -s) / nu;
        let (pr, pi) = (-sn * scale, cs * scale);
        return Ok((pr * re - pi * im, last * scale));
    }
    // half-period panels between zeros of cos(νt), Wynn-accelerated
    let half = core::f64::consts::PI / nu;
    let first_zero = (libm::floor(x / core::f64::consts::PI - 0.5) + 1.5) * half;
    let f = |t: f64| math::cos(nu * t) * math::powf(t, -s);
    let mut partial = Vec::with_capacity(64);
    let mut acc = integrate(f, t0, first_zero, spec.abs_tol * 1e-3, 1e-13, spec.subdivision_limit)?.value;
    partial.push(acc);
    let mut a = first_zero;
    for _ in 0..48 {
        let b = a + half;
        let piece = if b / a < 1.5 {
            gk21(&f, a, b).0
        } else {
            integrate(f, a, b, spec.abs_tol * 1e-3, 1e-13, spec.subdivision_limit)?.value
        };
        acc += piece;
        partial.push(acc);
        a = b;
    }
    Ok(wynn_epsilon(&partial))
}

/// `∫₀^∞ g(t) t^{−1−α} dt` where `g` is evaluated by `eval` on `(0, t_max]`
/// and by its cosine expansion beyond. `g(t) = O(t²)` at the origin.
fn weighted_integral<G: Fn(f64) -> f64>(eval: G, series: &CosSeries, alpha: f64, spec: &QuadratureSpec) -> Result<OracleValue> {
    spec.validate()?;
    let t_max = spec.t_max;
    let t_cut = t_max.min(1.0);
    // t = u^β removes the t^{1−α} behaviour at the origin
    let beta = 1.0 / (2.0 - alpha);
    let head_f = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        beta * eval(math::powf(u, beta)) * math::powf(u, -beta * alpha - 1.0)
    };
    let head = integrate(head_f, 0.0, math::powf(t_cut, 1.0 / beta), spec.abs_tol, spec.rel_tol, spec.subdivision_limit)?;
    let mid_f = |t: f64| eval(t) * math::powf(t, -1.0 - alpha);
    let mid = integrate(mid_f, t_cut, t_max, spec.abs_tol, spec.rel_tol, spec.subdivision_limit)?;

    let s = 1.0 + alpha;
    let mut tail = Sum::default();
    let mut tail_err = 0.0;
    tail.add(series.constant * math::powf(t_max, -alpha) / alpha);
    for &(nu, coef) in &series.terms {
        let (v, e) = cos_tail(nu, t_max, s, spec)?;
        tail.add(coef * v);
        tail_err += coef.abs() * e;
    }
    let tail = tail.value();
    let value = head.value + mid.value + tail;
    let error = head.error + mid.error + tail_err;
    let tol = spec.abs_tol.max(spec.rel_tol * value.abs());
    if error > 10.0 * tol {
        return Err(Error::QuadratureNotConverged { error, intervals: head.intervals + mid.intervals });
    }
    Ok(OracleValue {
        value,
        error,
        tail,
        tail_bound: series.sup() * math::powf(t_max, -alpha) / alpha,
        intervals: head.intervals + mid.intervals,
    })
}

fn scaled(v: OracleValue, factor: f64) -> OracleValue {
    OracleValue {
        value: v.value * factor,
        error: v.error * factor,
        tail: v.tail * factor,
        tail_bound: v.tail_bound * factor,
        intervals: v.intervals,
    }
}

/// siCov⁽ᵅ⁾ of a discrete law on ℝ × ℝ from its defining integral
///
/// ```text
/// 2/c(1,α) ∫₀^∞ |φ_{X+Y}(t) − φ_X(t)φ_Y(t)|² t^{−1−α} dt
/// ```
///
/// with the characteristic functions summed exactly over the atoms.
pub fn quadrature_sicov_discrete(law: &DiscreteJointLaw, alpha: AlphaParam, spec: &QuadratureSpec) -> Result<OracleValue> {
    spec.validate()?;
    let c = c_const(1, alpha.get())?.value;
    let defect = diagonal_defect(law);
    if defect.is_empty() {
        return Ok(OracleValue { value: 0.0, error: 0.0, tail: 0.0, tail_bound: 0.0, intervals: 0 });
    }
    let series = squared_modulus(&defect);
    let eval = |t: f64| {
        let (mut re, mut im) = (0.0, 0.0);
        for &(w, c) in &defect {
            let (s, co) = math::sin_cos(w * t);
            re += c * co;
            im += c * s;
        }
        re * re + im * im
    };
    let v = weighted_integral(eval, &series, alpha.get(), spec)?;
    Ok(scaled(v, 2.0 / c))
}

/// Both sides of `E|X|^α = c(1,α)⁻¹ ∫ (1 − Re φ_X(t)) |t|^{−1−α} dt`:
/// (quadrature value, moment computed from the atoms).
pub fn lemma21_check(law: &DiscreteLaw, alpha: AlphaParam, spec: &QuadratureSpec) -> Result<(OracleValue, f64)> {
    spec.validate()?;
    let a = alpha.get();
    let c = c_const(1, a)?.value;
    let moment = law.abs_moment(a);
    let mut items: Vec<(f64, f64)> = law.atoms().iter().map(|&(x, p)| (x.abs(), -p)).collect();
    items.push((0.0, 1.0));
    let merged = merge(items);
    let mut series = CosSeries::default();
    for (f, coef) in merged {
        if same_freq(f, 0.0) {
            series.constant += coef;
        } else {
            series.terms.push((f, coef));
        }
    }
    let atoms = law.atoms();
    // 1 − cos u = 2 sin²(u/2) keeps small-t values accurate
    let eval = |t: f64| {
        let mut acc = 0.0;
        for &(x, p) in atoms {
            let h = libm::sin(0.5 * x * t);
            acc += p * 2.0 * h * h;
        }
        acc
    };
    if series.terms.is_empty() && series.constant.abs() < 1e-15 {
        return Ok((OracleValue { value: 0.0, error: 0.0, tail: 0.0, tail_bound: 0.0, intervals: 0 }, moment));
    }
    let v = weighted_integral(eval, &series, a, spec)?;
    Ok((scaled(v, 2.0 / c), moment))
}

/// The six moment terms as exact expectations over the atoms (`m⁴` work).
pub fn population_terms(law: &DiscreteJointLaw, alpha: AlphaParam) -> TermStatistics {
    let a = alpha.get();
    let pw = |v: f64| math::powf(v.abs(), a);
    let at = law.atoms();
    let mut t = [Sum::default(); 6];
    for &(x1, y1, p1) in at {
        for &(x2, y2, p2) in at {
            let p12 = p1 * p2;
            t[2].add(p12 * pw(x1 + y1 - x2 - y2));
            t[3].add(p12 * pw(x1 - x2));
            t[4].add(p12 * pw(y1 - y2));
            for &(x3, y3, p3) in at {
                let p123 = p12 * p3;
                t[0].add(p123 * pw(x1 + y1 - x2 - y3));
                for &(_, y4, p4) in at {
                    let p = p123 * p4;
                    t[1].add(p * pw(x1 + y2 - x3 - y4));
                    t[5].add(p * pw(x1 - x2 + y3 - y4));
                }
            }
        }
    }
    let m = at.len() as u64;
    let [j1, j2, j3, k1, k2, k3] = t.map(|s| s.value());
    TermStatistics {
        j1,
        j2,
        j3,
        k1,
        k2,
        k3,
        convention: Convention::Population,
        tuples: TupleCounts { pairs: m * m, triples: m * m * m, quadruples: m * m * m * m },
        alpha: a,
    }
}

/// Population siCor from [`population_terms`].
pub fn population_sicor(law: &DiscreteJointLaw, alpha: AlphaParam) -> Result<f64> {
    let t = population_terms(law, alpha);
    let den = t.denominator();
    if !(den > 0.0) {
        return Err(Error::DegenerateDenominator { value: den });
    }
    Ok(t.sicov() / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point(p: f64) -> DiscreteLaw {
        DiscreteLaw::new(alloc::vec![(0.0, 1.0 - p), (1.0, p)]).unwrap()
    }

    #[test]
    fn rademacher_identity_quadrature() {
        let spec = QuadratureSpec::default();
        for law in [DiscreteJointLaw::rademacher_identity(), DiscreteJointLaw::rademacher_negated()] {
            let v = quadrature_sicov_discrete(&law, AlphaParam::ONE, &spec).unwrap();
            assert!((v.value - 0.5).abs() < 1e-6, "{v:?}");
        }
    }

    #[test]
    fn product_law_is_zero() {
        let law = DiscreteJointLaw::rademacher_independent();
        let v = quadrature_sicov_discrete(&law, AlphaParam::ONE, &QuadratureSpec::default()).unwrap();
        assert!(v.value.abs() < 1e-8);
    }

    #[test]
    fn lemma_fixtures() {
        let spec = QuadratureSpec::default();
        let rad = DiscreteLaw::new(alloc::vec![(1.0, 0.5), (-1.0, 0.5)]).unwrap().difference();
        let (q, m) = lemma21_check(&rad, AlphaParam::ONE, &spec).unwrap();
        assert!((q.value - 1.0).abs() < 1e-6 && (m - 1.0).abs() < 1e-15);
        let (q, m) = lemma21_check(&two_point(0.3).difference(), AlphaParam::ONE, &spec).unwrap();
        assert!((q.value - 0.42).abs() < 1e-6 && (m - 0.42).abs() < 1e-12, "{q:?} {m}");
        let (q, m) = lemma21_check(&DiscreteLaw::point(0.0), AlphaParam::ONE, &spec).unwrap();
        assert_eq!((q.value, m), (0.0, 0.0));
    }

    #[test]
    fn lemma_other_alphas() {
        let spec = QuadratureSpec::default();
        let law = DiscreteLaw::new(alloc::vec![(-1.5, 0.2), (0.25, 0.5), (3.0, 0.3)]).unwrap();
        for a in [0.3, 0.75, 1.0, 1.4, 1.9] {
            let (q, m) = lemma21_check(&law, AlphaParam::new(a).unwrap(), &spec).unwrap();
            assert!((q.value - m).abs() < 1e-6 * m.max(1.0), "alpha={a}: {} vs {m}", q.value);
        }
    }

    #[test]
    fn rademacher_population_terms() {
        let t = population_terms(&DiscreteJointLaw::rademacher_identity(), AlphaParam::ONE);
        assert_eq!((t.j1, t.j2, t.j3, t.k1, t.k2, t.k3), (2.0, 1.5, 2.0, 1.0, 1.0, 1.5));
        assert_eq!(t.sicov(), 0.5);
        assert_eq!(population_sicor(&DiscreteJointLaw::rademacher_identity(), AlphaParam::ONE).unwrap(), 1.0);
    }

    #[test]
    fn tail_expansion_matches_segments() {
        let spec = QuadratureSpec::default();
        for nu in [0.2, 1.0, 3.7] {
            // ν·T straddles the switch between the two methods
            let (a, _) = cos_tail(nu, 50.0 / nu, 1.6, &spec).unwrap();
            let (b, _) = cos_tail(nu, 30.0 / nu, 1.6, &spec).unwrap();
            let mid = integrate(|t| libm::cos(nu * t) * libm::pow(t, -1.6), 30.0 / nu, 50.0 / nu, 1e-15, 1e-12, 1000).unwrap();
            assert!((b - mid.value - a).abs() < 1e-12 * nu.powf(0.6), "nu={nu}");
        }
    }
}
