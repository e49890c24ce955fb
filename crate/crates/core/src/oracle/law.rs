use alloc::vec::Vec;

use crate::error::{Error, Result};

const PROB_SUM_TOL: f64 = 1e-12;

/// A finitely supported joint law of `(X, Y)` on ℝ × ℝ.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteJointLaw {
    atoms: Vec<(f64, f64, f64)>,
}

impl DiscreteJointLaw {
    /// Atoms are `(x, y, prob)`. Probabilities must be positive and sum to 1.
    pub fn new(atoms: Vec<(f64, f64, f64)>) -> Result<Self> {
        check_atoms(atoms.iter().map(|&(x, y, p)| (x.is_finite() && y.is_finite(), p)))?;
        Ok(DiscreteJointLaw { atoms })
    }

    /// `X` Rademacher and `Y = X`.
    pub fn rademacher_identity() -> Self {
        DiscreteJointLaw { atoms: alloc::vec![(1.0, 1.0, 0.5), (-1.0, -1.0, 0.5)] }
    }

    /// `X` Rademacher and `Y = −X`.
    pub fn rademacher_negated() -> Self {
        DiscreteJointLaw { atoms: alloc::vec![(1.0, -1.0, 0.5), (-1.0, 1.0, 0.5)] }
    }

    /// Two independent Rademacher variables.
    pub fn rademacher_independent() -> Self {
        let mut atoms = Vec::with_capacity(4);
        for x in [1.0, -1.0] {
            for y in [1.0, -1.0] {
                atoms.push((x, y, 0.25));
            }
        }
        DiscreteJointLaw { atoms }
    }

    pub fn atoms(&self) -> &[(f64, f64, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn x_marginal(&self) -> DiscreteLaw {
        DiscreteLaw::merged(self.atoms.iter().map(|&(x, _, p)| (x, p)))
    }

    pub fn y_marginal(&self) -> DiscreteLaw {
        DiscreteLaw::merged(self.atoms.iter().map(|&(_, y, p)| (y, p)))
    }
}

/// A finitely supported law on ℝ.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLaw {
    atoms: Vec<(f64, f64)>,
}

impl DiscreteLaw {
    /// Atoms are `(value, prob)`.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        check_atoms(atoms.iter().map(|&(v, p)| (v.is_finite(), p)))?;
        Ok(DiscreteLaw { atoms })
    }

    pub fn point(value: f64) -> Self {
        DiscreteLaw { atoms: alloc::vec![(value, 1.0)] }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// Law of `X − X′` for an independent copy `X′`.
    pub fn difference(&self) -> DiscreteLaw {
        let pairs = self.atoms.iter().flat_map(|&(a, p)| self.atoms.iter().map(move |&(b, q)| (a - b, p * q)));
        DiscreteLaw::merged(pairs)
    }

    /// `E|X|^α` from the atoms.
    pub fn abs_moment(&self, alpha: f64) -> f64 {
        crate::math::sum(self.atoms.iter().map(|&(v, p)| p * crate::math::powf(v.abs(), alpha)))
    }

    fn merged(items: impl Iterator<Item = (f64, f64)>) -> DiscreteLaw {
        let mut v: Vec<(f64, f64)> = items.collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms: Vec<(f64, f64)> = Vec::with_capacity(v.len());
        for (x, p) in v {
            match atoms.last_mut() {
                Some(last) if last.0 == x => last.1 += p,
                _ => atoms.push((x, p)),
            }
        }
        DiscreteLaw { atoms }
    }
}

fn check_atoms(items: impl Iterator<Item = (bool, f64)>) -> Result<()> {
    let mut total = 0.0;
    let mut count = 0usize;
    for (finite, p) in items {
        if !finite {
            return Err(Error::InvalidLaw { reason: "atom coordinates must be finite" });
        }
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidLaw { reason: "atom probabilities must be positive" });
        }
        total += p;
        count += 1;
    }
    if count == 0 {
        return Err(Error::InvalidLaw { reason: "a law needs at least one atom" });
    }
    if (total - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::InvalidLaw { reason: "atom probabilities must sum to 1" });
    }
    Ok(())
}
