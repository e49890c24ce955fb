use core::f64::consts::{PI, SQRT_2};

use crate::alpha::{validate_alpha, AlphaContext};
use crate::error::{Error, Result};
use crate::math::{powf, sqrt};

/// Population values for a standard bivariate normal pair with correlation ρ at α = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalClosedForm {
    pub rho: f64,
    pub sicov: f64,
    pub sicor: f64,
    /// siCor(ρ) / siCor(1); exceeds 1 for ρ < 0, so siCor is not monotone in |ρ|.
    pub ratio_r: f64,
}

/// Closed forms for `(X, Y)` standard bivariate normal with correlation ρ, α = 1:
///
/// ```text
/// siCov = 2√(2/π) (√(4+2ρ) − 1 − √(1+ρ))
/// siCor = (√(4+2ρ) − √(1+ρ) − 1) / (√2 − 1)
/// ```
pub fn normal_closed_form(rho: f64) -> Result<NormalClosedForm> {
    if !(rho.abs() <= 1.0) {
        return Err(Error::RhoOutOfRange { rho });
    }
    let num = sqrt(4.0 + 2.0 * rho) - sqrt(1.0 + rho) - 1.0;
    Ok(NormalClosedForm {
        rho,
        sicov: 2.0 * sqrt(2.0 / PI) * num,
        sicor: num / (SQRT_2 - 1.0),
        ratio_r: num / (sqrt(6.0) - SQRT_2 - 1.0),
    })
}

/// siCor⁽ᵅ⁾ for `X` standard Cauchy and `Y = X` (so `X + Y` is Cauchy with scale 2):
///
/// ```text
/// (−4^α + 2(2+√2)^α − (2√2)^α) / (4(2^{α−1} − 4^{α−1}))
/// ```
///
/// Only `0 < α < 1` is admissible.
pub fn cauchy_closed_form(alpha: f64) -> Result<f64> {
    let a = validate_alpha(alpha, AlphaContext::CauchyMargin)?.get();
    let num = -powf(4.0, a) + 2.0 * powf(2.0 + SQRT_2, a) - powf(2.0 * SQRT_2, a);
    let den = 4.0 * (powf(2.0, a - 1.0) - powf(4.0, a - 1.0));
    Ok(num / den)
}
