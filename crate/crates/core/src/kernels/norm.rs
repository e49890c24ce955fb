use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math;

/// `|v|^α` for the Euclidean norm.
pub fn norm_alpha(v: &[f64], alpha: f64) -> f64 {
    if let [x] = v {
        return Power::new(alpha).of_abs(*x);
    }
    Power::new(alpha).of_sq(v.iter().map(|c| c * c).sum())
}

/// Raises norms to a fixed power, skipping `pow` when α = 1.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Power {
    alpha: f64,
    half: f64,
    unit: bool,
}

impl Power {
    pub fn new(alpha: f64) -> Self {
        Power { alpha, half: 0.5 * alpha, unit: alpha == 1.0 }
    }

    /// `|v|^α` for a scalar.
    #[inline(always)]
    pub fn of_abs(self, v: f64) -> f64 {
        let a = v.abs();
        if self.unit {
            a
        } else {
            math::powf(a, self.alpha)
        }
    }

    /// `(√sq)^α` for a squared norm.
    #[inline(always)]
    pub fn of_sq(self, sq: f64) -> f64 {
        if self.unit {
            math::sqrt(sq)
        } else {
            math::powf(sq, self.half)
        }
    }

    /// `|a + b − c − d|^α` over rows of width p.
    #[inline(always)]
    pub fn combo(self, a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> f64 {
        if a.len() == 1 {
            return self.of_abs(a[0] + b[0] - c[0] - d[0]);
        }
        let mut sq = 0.0;
        for k in 0..a.len() {
            let v = a[k] + b[k] - c[k] - d[k];
            sq += v * v;
        }
        self.of_sq(sq)
    }

    /// `|a − b − c|^α` over rows of width p.
    #[inline(always)]
    pub fn triple(self, a: &[f64], b: &[f64], c: &[f64]) -> f64 {
        if a.len() == 1 {
            return self.of_abs(a[0] - b[0] - c[0]);
        }
        let mut sq = 0.0;
        for k in 0..a.len() {
            let v = a[k] - b[k] - c[k];
            sq += v * v;
        }
        self.of_sq(sq)
    }

    /// `|a − b|^α` over rows of width p.
    #[inline(always)]
    pub fn diff(self, a: &[f64], b: &[f64]) -> f64 {
        if a.len() == 1 {
            return self.of_abs(a[0] - b[0]);
        }
        let mut sq = 0.0;
        for k in 0..a.len() {
            let v = a[k] - b[k];
            sq += v * v;
        }
        self.of_sq(sq)
    }
}

/// The normalising constant `c(p, α)` of the weight `ρ_α(t) = c(p,α)⁻¹ |t|^{−α−p}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightConstant {
    pub p: usize,
    pub alpha: f64,
    pub value: f64,
}

/// `c(p,α) = 2π^{p/2} Γ(1 − α/2) / (α 2^α Γ((α + p)/2))`.
///
/// This makes `∫ (1 − cos⟨t,x⟩) ρ_α(t) dt = |x|^α`. At α = 1 it is
/// `π^{(1+p)/2} / Γ((1+p)/2)`, half the surface area of the unit sphere in ℝ^{p+1}.
pub fn c_const(p: usize, alpha: f64) -> Result<WeightConstant> {
    if p == 0 {
        return Err(Error::ZeroDimension);
    }
    let alpha = crate::AlphaParam::new(alpha)?.get();
    let pf = p as f64;
    let value = 2.0 * math::powf(PI, pf / 2.0) * math::gamma(1.0 - alpha / 2.0)
        / (alpha * math::powf(2.0, alpha) * math::gamma((alpha + pf) / 2.0));
    Ok(WeightConstant { p, alpha, value })
}
