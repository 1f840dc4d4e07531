//! Product distributions over `{0,1}^n` and test-cost vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assignment::{PartialAssignment, MAX_VARS};
use crate::error::{Error, Result};

/// Absolute tolerance for every floating-point comparison in the crate.
pub const EPS: f64 = 1e-9;

/// The deterministic generator behind every seeded operation: ChaCha8
/// seeded through `SeedableRng::seed_from_u64`.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Whether degenerate probabilities are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Function evaluation: every `p_i` strictly inside `(0, 1)`.
    Sbfe,
    /// Set cover: `p_i` anywhere in `[0, 1]`.
    Sssc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductDistribution {
    p: Vec<f64>,
    mode: Mode,
}

fn check_arity(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::BadArity { n, limit: MAX_VARS });
    }
    Ok(())
}

impl ProductDistribution {
    pub fn sbfe(p: Vec<f64>) -> Result<Self> {
        check_arity(p.len())?;
        for (index, &value) in p.iter().enumerate() {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidProbability { index, value });
            }
        }
        Ok(Self { p, mode: Mode::Sbfe })
    }

    pub fn sssc(p: Vec<f64>) -> Result<Self> {
        check_arity(p.len())?;
        for (index, &value) in p.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { index, value });
            }
        }
        Ok(Self { p, mode: Mode::Sssc })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::sbfe(vec![0.5; n])
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `Prob[x_i = 1]`.
    pub fn p(&self, i: usize) -> f64 {
        self.p[i]
    }

    pub fn probs(&self) -> &[f64] {
        &self.p
    }

    /// Probability of outcome `l` for test `i`.
    pub fn outcome_prob(&self, i: usize, l: bool) -> f64 {
        if l {
            self.p[i]
        } else {
            1.0 - self.p[i]
        }
    }

    /// `p(b)`: the product over `dom(b)` of `p_j` or `1 - p_j`.
    pub fn prob_of(&self, b: &PartialAssignment) -> f64 {
        b.dom().map(|j| self.outcome_prob(j, b.get(j) == Some(true))).product()
    }

    /// Draws a full assignment; bit `i` is 1 with probability `p_i`.
    pub fn sample(&self, rng: &mut impl Rng) -> PartialAssignment {
        let mut bits = 0u64;
        for (i, &p) in self.p.iter().enumerate() {
            if rng.gen::<f64>() < p {
                bits |= 1 << i;
            }
        }
        PartialAssignment::full(self.len(), bits)
    }
}

/// Deterministic sample from `d` for a given seed.
pub fn sample_input(d: &ProductDistribution, seed: u64) -> PartialAssignment {
    d.sample(&mut seeded_rng(seed))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostVector(Vec<f64>);

impl CostVector {
    pub fn new(c: Vec<f64>) -> Result<Self> {
        check_arity(c.len())?;
        for (index, &value) in c.iter().enumerate() {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::InvalidCost { index, value });
            }
        }
        Ok(Self(c))
    }

    pub fn unit(n: usize) -> Result<Self> {
        Self::new(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Cost of the tests recorded in `b`.
    pub fn cost_of(&self, b: &PartialAssignment) -> f64 {
        b.dom().map(|j| self.0[j]).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn prob_of_examples() {
        let d = ProductDistribution::sbfe(vec![0.3, 0.7]).unwrap();
        assert_eq!(d.prob_of(&pa("**")), 1.0);
        assert_eq!(d.prob_of(&pa("1*")), 0.3);
        assert!((d.prob_of(&pa("10")) - 0.09).abs() < 1e-12);
    }

    #[test]
    fn sbfe_rejects_degenerate() {
        assert!(ProductDistribution::sbfe(vec![0.5, 1.0]).is_err());
        assert!(ProductDistribution::sbfe(vec![0.0]).is_err());
        assert!(ProductDistribution::sbfe(vec![f64::NAN]).is_err());
        assert!(ProductDistribution::sssc(vec![0.0, 1.0]).is_ok());
        assert!(ProductDistribution::sssc(vec![1.5]).is_err());
    }

    #[test]
    fn costs_must_be_nonnegative() {
        assert!(CostVector::new(vec![1.0, -0.5]).is_err());
        assert!(CostVector::new(vec![0.0, f64::INFINITY]).is_err());
        assert!(CostVector::new(vec![]).is_err());
    }

    #[test]
    fn degenerate_sampling() {
        let ones = ProductDistribution::sssc(vec![1.0, 1.0]).unwrap();
        let zeros = ProductDistribution::sssc(vec![0.0, 0.0]).unwrap();
        for seed in 0..20 {
            assert_eq!(sample_input(&ones, seed), pa("11"));
            assert_eq!(sample_input(&zeros, seed), pa("00"));
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let d = ProductDistribution::uniform(2).unwrap();
        for seed in [0, 7, 12345] {
            assert_eq!(sample_input(&d, seed), sample_input(&d, seed));
        }
    }

    #[test]
    fn branch_probabilities_sum() {
        let d = ProductDistribution::sbfe(vec![0.2, 0.6, 0.9]).unwrap();
        for b in PartialAssignment::all(3) {
            for i in b.untested() {
                let total = d.prob_of(&b.with(i, true)) + d.prob_of(&b.with(i, false));
                assert!((total - d.prob_of(&b)).abs() < 1e-12);
            }
        }
    }
}
