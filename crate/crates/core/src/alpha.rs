use crate::error::{Error, Result};

/// Which validity window applies to α.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaContext {
    /// Any law with a finite α-th moment: α ∈ (0, 2).
    #[default]
    General,
    /// Cauchy margins: E|X|^α is finite only for α < 1.
    CauchyMargin,
}

/// Exponent α of the weight `|t|^{−α−p}`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub const ONE: AlphaParam = AlphaParam(1.0);

    pub fn new(alpha: f64) -> Result<Self> {
        validate_alpha(alpha, AlphaContext::General)
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }
}

impl Default for AlphaParam {
    fn default() -> Self {
        AlphaParam::ONE
    }
}

pub fn validate_alpha(alpha: f64, context: AlphaContext) -> Result<AlphaParam> {
    let (upper, window) = match context {
        AlphaContext::General => (2.0, "(0,2)"),
        AlphaContext::CauchyMargin => {
            (1.0, "(0,1) for Cauchy margins, whose absolute moments of order >= 1 are infinite")
        }
    };
    if alpha.is_finite() && alpha > 0.0 && alpha < upper {
        Ok(AlphaParam(alpha))
    } else {
        Err(Error::AlphaOutOfRange { alpha, context, window })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn general_window() {
        assert_eq!(validate_alpha(1.0, AlphaContext::General).unwrap().get(), 1.0);
        assert!(validate_alpha(1.999, AlphaContext::General).is_ok());
        for bad in [0.0, 2.0, -0.5, f64::NAN, f64::INFINITY] {
            let err = validate_alpha(bad, AlphaContext::General).unwrap_err();
            assert!(err.to_string().contains("alpha must lie in (0,2)"), "{err}");
        }
    }

    #[test]
    fn cauchy_window_cites_moments() {
        assert!(validate_alpha(0.5, AlphaContext::CauchyMargin).is_ok());
        let err = validate_alpha(1.5, AlphaContext::CauchyMargin).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("(0,1)") && msg.contains("moments"), "{msg}");
        assert!(validate_alpha(1.0, AlphaContext::CauchyMargin).is_err());
    }

    /// Truncated moment ∫₀^T x^α · 2/(π(1+x²)) dx keeps growing with T when
    /// α ≥ 1 and settles when α < 1.
    #[test]
    fn cauchy_truncated_moment_diverges_above_one() {
        fn truncated(alpha: f64, t: f64) -> f64 {
            // midpoint rule on a log grid
            let steps = 200_000;
            let (a, b) = (1e-9_f64.ln(), t.ln());
            let h = (b - a) / steps as f64;
            (0..steps)
                .map(|k| {
                    let x = (a + (k as f64 + 0.5) * h).exp();
                    x.powf(alpha) * 2.0 / (core::f64::consts::PI * (1.0 + x * x)) * x * h
                })
                .sum()
        }
        let grow = |alpha: f64| truncated(alpha, 1e8) - truncated(alpha, 1e4);
        assert!(grow(1.5) > 50.0);
        assert!(grow(1.0) > 5.0);
        assert!(grow(0.5) < 0.02);
    }
}
