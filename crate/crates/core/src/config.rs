use crate::error::{Error, Result};
use crate::AlphaParam;

/// Seed used whenever none is supplied, so runs are reproducible by default.
pub const DEFAULT_SEED: u64 = 0x51c0_5eed_2024_0001;

/// Tuples drawn per term family in incomplete mode.
pub const DEFAULT_TUPLE_BUDGET: u64 = 200_000;

/// Largest n for which the automatic policy enumerates every tuple.
pub const DEFAULT_EXACT_THRESHOLD: usize = 40;

/// How the moment terms are averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// All distinct index tuples (unbiased U-statistic).
    UComplete,
    /// A seeded uniform sample of distinct index tuples.
    UIncomplete,
    /// All index tuples with repetition, via the sorted O(n² log n) path.
    VFast,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::UComplete => "u",
            Mode::UIncomplete => "u-incomplete",
            Mode::VFast => "v-fast",
        }
    }
}

impl core::fmt::Display for Mode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Mode {
    type Err = &'static str;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "u" | "u-complete" => Ok(Mode::UComplete),
            "u-incomplete" => Ok(Mode::UIncomplete),
            "v-fast" | "v" => Ok(Mode::VFast),
            _ => Err("mode must be one of u, u-incomplete, v-fast"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    /// `None` picks a mode from the sample (see [`EstimatorConfig::resolve_mode`]).
    pub mode: Option<Mode>,
    pub tuple_budget: u64,
    pub seed: u64,
    pub exact_threshold_n: usize,
    /// Clamp empirical siCor into [0, 1] (a warning is still attached).
    pub clamp_correlation: bool,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            mode: None,
            tuple_budget: DEFAULT_TUPLE_BUDGET,
            seed: DEFAULT_SEED,
            exact_threshold_n: DEFAULT_EXACT_THRESHOLD,
            clamp_correlation: false,
        }
    }
}

impl EstimatorConfig {
    pub fn with_mode(mode: Mode) -> Self {
        EstimatorConfig { mode: Some(mode), ..Default::default() }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.tuple_budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == Some(Mode::UIncomplete) && self.tuple_budget == 0 {
            return Err(Error::ZeroBudget);
        }
        Ok(())
    }

    /// Mode actually used for a sample of `n` rows of width `p`.
    ///
    /// One-dimensional data at α = 1 always has an exact sorted path, so the
    /// automatic policy uses complete enumeration there at any n. Otherwise
    /// complete enumeration up to `exact_threshold_n`, sampling above it.
    pub fn resolve_mode(&self, n: usize, p: usize, alpha: AlphaParam) -> Mode {
        match self.mode {
            Some(mode) => mode,
            None if p == 1 && alpha.is_one() => Mode::UComplete,
            None if n <= self.exact_threshold_n => Mode::UComplete,
            None => Mode::UIncomplete,
        }
    }
}
