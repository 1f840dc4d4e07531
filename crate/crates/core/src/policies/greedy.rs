//! Adaptive Greedy: test the untested item minimizing cost per unit of
//! expected utility gain, until the goal is reached.

use crate::assignment::PartialAssignment;
use crate::distribution::{CostVector, ProductDistribution, EPS};
use crate::error::{Error, Result};
use crate::policy::{self, Policy};
use crate::trace::RunTrace;
use crate::utility::{expected_gain, Utility};

/// Items with zero expected gain are never selected; zero-cost items with
/// positive gain have ratio 0. Ties within [`EPS`] go to the lowest index.
pub struct AdaptiveGreedy<'a, U: ?Sized> {
    g: &'a U,
    d: &'a ProductDistribution,
    c: &'a CostVector,
}

impl<U: ?Sized> Clone for AdaptiveGreedy<'_, U> {
    fn clone(&self) -> Self {
        Self {
            g: self.g,
            d: self.d,
            c: self.c,
        }
    }
}

impl<'a, U: Utility + ?Sized> AdaptiveGreedy<'a, U> {
    pub fn new(g: &'a U, d: &'a ProductDistribution, c: &'a CostVector) -> Result<Self> {
        super::check_arities(g.arity(), d, c)?;
        Ok(Self { g, d, c })
    }

    /// The greedy pick and its ratio `c_j / E[g_b(j)]`.
    pub fn select(&self, b: &PartialAssignment) -> Result<Option<(usize, f64)>> {
        if self.g.at_goal(b) {
            return Ok(None);
        }
        let mut best: Option<(usize, f64)> = None;
        for j in b.untested() {
            let gain = expected_gain(self.g, b, j, self.d)?;
            if gain <= 0.0 {
                continue;
            }
            let ratio = self.c.get(j) / gain;
            if best.is_none_or(|(_, r)| ratio < r - EPS) {
                best = Some((j, ratio));
            }
        }
        match best {
            Some(pick) => Ok(Some(pick)),
            None => Err(Error::NoProgress {
                assignment: b.to_string(),
            }),
        }
    }
}

impl<U: Utility + ?Sized> Policy for AdaptiveGreedy<'_, U> {
    fn next_test(&mut self, b: &PartialAssignment) -> Result<Option<usize>> {
        Ok(self.select(b)?.map(|(j, _)| j))
    }
}

pub fn adaptive_greedy<U: Utility + ?Sized>(
    g: &U,
    d: &ProductDistribution,
    c: &CostVector,
    outcome: impl FnMut(usize) -> bool,
) -> Result<RunTrace> {
    let mut policy = AdaptiveGreedy::new(g, d, c)?;
    policy::run(&mut policy, g.arity(), c, outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::CdnfFormula;
    use crate::policy::oracle_from;
    use crate::utility::{cdnf_utility, ZeroUtility};

    fn pa(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    fn setup() -> (crate::utility::CdnfUtility, ProductDistribution, CostVector) {
        (
            cdnf_utility(&CdnfFormula::disjunction(2).unwrap()).unwrap(),
            ProductDistribution::uniform(2).unwrap(),
            CostVector::unit(2).unwrap(),
        )
    }

    #[test]
    fn disjunction_runs() {
        let (g, d, c) = setup();
        let t = adaptive_greedy(&g, &d, &c, oracle_from(pa("01"))).unwrap();
        assert_eq!(t.tested, vec![0, 1]);
        assert_eq!(t.total_cost, 2.0);
        let t = adaptive_greedy(&g, &d, &c, oracle_from(pa("11"))).unwrap();
        assert_eq!(t.tested, vec![0]);
        assert_eq!(t.total_cost, 1.0);
    }

    #[test]
    fn goal_zero_runs_nothing() {
        let g = ZeroUtility::new(3);
        let d = ProductDistribution::uniform(3).unwrap();
        let c = CostVector::unit(3).unwrap();
        let t = adaptive_greedy(&g, &d, &c, |_| true).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.total_cost, 0.0);
    }

    #[test]
    fn selection_minimizes_ratio() {
        let (g, d, _) = setup();
        let c = CostVector::new(vec![3.0, 1.0]).unwrap();
        let policy = AdaptiveGreedy::new(&g, &d, &c).unwrap();
        let (j, ratio) = policy.select(&pa("**")).unwrap().unwrap();
        assert_eq!(j, 1);
        assert!((ratio - 1.0 / 1.5).abs() < 1e-12);
    }
}
