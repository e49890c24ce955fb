use alloc::vec::Vec;
use core::fmt;

use crate::config::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateKind {
    SiCov,
    SiCor,
    DCov,
    DCor,
    Pearson,
}

impl EstimateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EstimateKind::SiCov => "sicov",
            EstimateKind::SiCor => "sicor",
            EstimateKind::DCov => "dcov",
            EstimateKind::DCor => "dcor",
            EstimateKind::Pearson => "pearson",
        }
    }
}

/// Where a value comes from: an estimator run on data, or an exact
/// population evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Sample(Mode),
    /// Plug-in computation that is not one of the siCov modes (dCov, Pearson).
    Classical,
    Population,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CiBounds {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Warning {
    /// An empirical siCov/siCor below zero; legitimate for a U-statistic.
    Negative(f64),
    /// An empirical siCor above one.
    AboveOne(f64),
    /// A reported value was clamped into [0, 1].
    Clamped { from: f64 },
    /// One margin is constant, so siCor is 0 by definition.
    ConstantMargin,
    /// The first-projection variance is near zero; the normal limit does not apply.
    DegenerateVariance { variance: f64, threshold: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::Negative(v) => write!(f, "negative estimate {v} (sampling noise around zero)"),
            Warning::AboveOne(v) => write!(f, "correlation estimate {v} exceeds 1"),
            Warning::Clamped { from } => write!(f, "correlation estimate {from} clamped into [0, 1]"),
            Warning::ConstantMargin => f.write_str("a margin is constant; siCor is 0 by definition"),
            Warning::DegenerateVariance { variance, threshold } => write!(
                f,
                "first-projection variance {variance:e} is below {threshold:e}; \
                 the statistic looks degenerate and the normal interval is unreliable"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DependenceEstimate {
    pub value: f64,
    pub kind: EstimateKind,
    pub alpha: f64,
    pub basis: Basis,
    pub n: usize,
    pub ci: Option<CiBounds>,
    pub warnings: Vec<Warning>,
}

impl DependenceEstimate {
    pub fn new(value: f64, kind: EstimateKind, alpha: f64, basis: Basis, n: usize) -> Self {
        DependenceEstimate { value, kind, alpha, basis, n, ci: None, warnings: Vec::new() }
    }
}
