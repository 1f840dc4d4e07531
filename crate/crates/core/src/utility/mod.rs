//! Integer-valued utility functions on partial assignments.
//!
//! A utility `g` pairs a function `{0,1,*}^n -> Z≥0` with a goal value `Q`.
//! Every construction here is assignment feasible for the function it was
//! built from: monotone, submodular, zero on the all-star assignment, and
//! equal to `Q` exactly on 0- and 1-certificates.

mod cdnf;
mod combine;
mod ranking;
mod threshold;
mod truth_table;

pub use cdnf::{cdnf_utility, decision_tree_to_cdnf, decode_cdnf, CdnfUtility, FalsifiedTerms, SatisfiedClauses};
pub use combine::{combine_and, combine_or, sum_all, And, Or, Sum};
pub use ranking::{ranking_pair_utility, RankingPairUtility};
pub use threshold::{threshold_utility, LowerBoundGain, ThresholdUtility, UpperBoundGain};
pub use truth_table::{truth_table_utility, TruthTableUtility};

use crate::assignment::PartialAssignment;
use crate::distribution::ProductDistribution;
use crate::error::{Error, Result};

/// Largest goal value accepted.
pub const MAX_GOAL: u64 = i64::MAX as u64;

pub trait Utility {
    fn arity(&self) -> usize;

    /// Goal value `Q`.
    fn goal(&self) -> u64;

    fn value(&self, b: &PartialAssignment) -> u64;

    fn at_goal(&self, b: &PartialAssignment) -> bool {
        self.value(b) >= self.goal()
    }
}

pub type DynUtility = Box<dyn Utility + Send + Sync>;

impl<U: Utility + ?Sized> Utility for &U {
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn goal(&self) -> u64 {
        (**self).goal()
    }
    fn value(&self, b: &PartialAssignment) -> u64 {
        (**self).value(b)
    }
}

impl<U: Utility + ?Sized> Utility for Box<U> {
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn goal(&self) -> u64 {
        (**self).goal()
    }
    fn value(&self, b: &PartialAssignment) -> u64 {
        (**self).value(b)
    }
}

/// The identically-zero utility with goal 0 (nothing to cover).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroUtility {
    n: usize,
}

impl ZeroUtility {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl Utility for ZeroUtility {
    fn arity(&self) -> usize {
        self.n
    }
    fn goal(&self) -> u64 {
        0
    }
    fn value(&self, _: &PartialAssignment) -> u64 {
        0
    }
}

pub fn checked_goal(q: u128) -> Result<u64> {
    if q > MAX_GOAL as u128 {
        Err(Error::GoalOverflow)
    } else {
        Ok(q as u64)
    }
}

/// `g_b(i, l) = g(b_{x_i <- l}) - g(b)`, or 0 when `i` is already tested.
/// A negative difference means `g` is not monotone.
pub fn marginal<U: Utility + ?Sized>(g: &U, b: &PartialAssignment, i: usize, l: bool) -> Result<u64> {
    if b.is_tested(i) {
        return Ok(0);
    }
    let before = g.value(b);
    let after = g.value(&b.with(i, l));
    after.checked_sub(before).ok_or_else(|| Error::BrokenUtility {
        assignment: b.to_string(),
        index: i,
        bit: l,
    })
}

/// `E[g_b(i)] = p_i g_b(i,1) + (1 - p_i) g_b(i,0)`.
pub fn expected_gain<U: Utility + ?Sized>(
    g: &U,
    b: &PartialAssignment,
    i: usize,
    d: &ProductDistribution,
) -> Result<f64> {
    if b.is_tested(i) {
        return Ok(0.0);
    }
    let p = d.p(i);
    let m1 = marginal(g, b, i, true)? as f64;
    let m0 = marginal(g, b, i, false)? as f64;
    Ok(p * m1 + (1.0 - p) * m0)
}

/// `g(S, a) = g(a^S)` for a set `S` given as a mask.
pub fn set_value<U: Utility + ?Sized>(g: &U, a: &PartialAssignment, set: u64) -> u64 {
    g.value(&a.restrict(set))
}

/// `g_{S,a}(j) = g(S ∪ {j}, a) - g(S, a)`; `a` must assign `j`.
pub fn set_marginal<U: Utility + ?Sized>(g: &U, a: &PartialAssignment, set: u64, j: usize) -> Result<u64> {
    let base = a.restrict(set);
    let Some(l) = a.get(j) else {
        return Err(Error::IndexOutOfRange { index: j, n: a.len() });
    };
    marginal(g, &base, j, l)
}

/// `E[g_{S,b}(j)]`: expected gain of testing `j` on top of `b^S`.
pub fn expected_set_gain<U: Utility + ?Sized>(
    g: &U,
    b: &PartialAssignment,
    set: u64,
    j: usize,
    d: &ProductDistribution,
) -> Result<f64> {
    expected_gain(g, &b.restrict(set), j, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{CdnfFormula, ThresholdFormula};

    fn pa(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn marginal_examples() {
        let and = cdnf_utility(&CdnfFormula::conjunction(2).unwrap()).unwrap();
        assert_eq!(marginal(&and, &pa("**"), 0, false).unwrap(), 2);
        assert_eq!(marginal(&and, &pa("1*"), 0, false).unwrap(), 0);
        let th = threshold_utility(&ThresholdFormula::new(vec![1, 1], 1).unwrap()).unwrap();
        assert_eq!(marginal(&th, &pa("**"), 0, true).unwrap(), 2);
    }

    #[test]
    fn expected_gain_examples() {
        let d = ProductDistribution::uniform(2).unwrap();
        let or = cdnf_utility(&CdnfFormula::disjunction(2).unwrap()).unwrap();
        assert_eq!(expected_gain(&or, &pa("**"), 0, &d).unwrap(), 1.5);
        assert_eq!(expected_gain(&or, &pa("1*"), 0, &d).unwrap(), 0.0);
        let th = threshold_utility(&ThresholdFormula::new(vec![1, 1], 1).unwrap()).unwrap();
        assert_eq!(expected_gain(&th, &pa("**"), 1, &d).unwrap(), 1.5);
    }

    struct Decreasing;
    impl Utility for Decreasing {
        fn arity(&self) -> usize {
            1
        }
        fn goal(&self) -> u64 {
            1
        }
        fn value(&self, b: &PartialAssignment) -> u64 {
            u64::from(b.is_empty())
        }
    }

    #[test]
    fn negative_marginal_is_an_error() {
        assert!(matches!(
            marginal(&Decreasing, &pa("*"), 0, true),
            Err(Error::BrokenUtility { index: 0, .. })
        ));
    }
}
