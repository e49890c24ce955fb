//! Paired-sample generators for the simulation scenarios.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::math;
use crate::rng::{substream, Stream};
use crate::PairedSample;

/// One-dimensional paired laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    /// Standard bivariate normal with correlation ρ; ρ = ±1 gives `Y = ±X`.
    BivariateNormal { rho: f64 },
    /// Independent standard normal margins.
    IndependentNormal,
    /// Rademacher `X` and `Y = X`.
    RademacherIdentity,
    /// Independent Rademacher margins.
    IndependentRademacher,
    /// Standard normal `X` and `Y = X² − 1`: uncorrelated but dependent.
    SquareMinusOne,
}

impl Generator {
    pub fn bivariate_normal(rho: f64) -> Result<Self> {
        if !(rho.abs() <= 1.0) {
            return Err(Error::RhoOutOfRange { rho });
        }
        Ok(Generator::BivariateNormal { rho })
    }

    /// Whether the margins are independent, so the permutation null holds.
    pub fn is_independent(&self) -> bool {
        match *self {
            Generator::BivariateNormal { rho } => rho == 0.0,
            Generator::IndependentNormal | Generator::IndependentRademacher => true,
            Generator::RademacherIdentity | Generator::SquareMinusOne => false,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<PairedSample> {
        let mut x = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        let sign = |rng: &mut R| if rng.random::<bool>() { 1.0 } else { -1.0 };
        for _ in 0..n {
            let (a, b) = match *self {
                Generator::BivariateNormal { rho } => {
                    let z1: f64 = rng.sample(StandardNormal);
                    let z2: f64 = rng.sample(StandardNormal);
                    (z1, rho * z1 + math::sqrt(1.0 - rho * rho) * z2)
                }
                Generator::IndependentNormal => (rng.sample(StandardNormal), rng.sample(StandardNormal)),
                Generator::RademacherIdentity => {
                    let s = sign(rng);
                    (s, s)
                }
                Generator::IndependentRademacher => (sign(rng), sign(rng)),
                Generator::SquareMinusOne => {
                    let z: f64 = rng.sample(StandardNormal);
                    (z, z * z - 1.0)
                }
            };
            x.push(a);
            y.push(b);
        }
        PairedSample::new(x, y, 1)
    }

    /// Sample number `index` of a seeded sequence of replicates.
    pub fn replicate(&self, n: usize, seed: u64, index: u64) -> Result<PairedSample> {
        self.sample(n, &mut substream(seed, Stream::Replicate, index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes_of_rho() {
        let s = Generator::bivariate_normal(-1.0).unwrap().replicate(50, 1, 0).unwrap();
        for i in 0..50 {
            assert_eq!(s.y_row(i)[0], -s.x_row(i)[0]);
        }
        assert!(Generator::bivariate_normal(1.5).is_err());
    }

    #[test]
    fn replicates_reproducible() {
        let g = Generator::SquareMinusOne;
        assert_eq!(g.replicate(20, 9, 3).unwrap(), g.replicate(20, 9, 3).unwrap());
        assert_ne!(g.replicate(20, 9, 3).unwrap(), g.replicate(20, 9, 4).unwrap());
    }
}
