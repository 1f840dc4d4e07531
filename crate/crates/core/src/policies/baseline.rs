//! Fixed-order baselines.

use crate::assignment::PartialAssignment;
use crate::distribution::{CostVector, ProductDistribution};
use crate::error::Result;
use crate::formula::BooleanFunction;
use crate::policy::Policy;
use crate::utility::Utility;

/// When a fixed-order policy stops early.
#[derive(Clone, Copy)]
pub enum Stop<'a> {
    /// Once any tested bit equals the given value.
    FirstOutcome(bool),
    /// Once the tested bits certify the function.
    Certificate(&'a (dyn BooleanFunction + Sync)),
    /// Once the utility reaches its goal.
    Goal(&'a (dyn Utility + Sync)),
    /// Never; every item is tested.
    Exhaust,
}

#[derive(Clone)]
pub struct FixedOrderPolicy<'a> {
    order: Vec<usize>,
    stop: Stop<'a>,
}

impl<'a> FixedOrderPolicy<'a> {
    pub fn new(order: Vec<usize>, stop: Stop<'a>) -> Self {
        Self { order, stop }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Same order, stopping on certificates of `f`.
    pub fn until_certified(self, f: &'a (dyn BooleanFunction + Sync)) -> FixedOrderPolicy<'a> {
        FixedOrderPolicy {
            order: self.order,
            stop: Stop::Certificate(f),
        }
    }

    /// Same order, stopping when `g` reaches its goal.
    pub fn until_goal(self, g: &'a (dyn Utility + Sync)) -> FixedOrderPolicy<'a> {
        FixedOrderPolicy {
            order: self.order,
            stop: Stop::Goal(g),
        }
    }

    fn done(&self, b: &PartialAssignment) -> bool {
        match self.stop {
            Stop::FirstOutcome(v) => {
                let hits = if v {
                    b.value_mask()
                } else {
                    b.known_mask() & !b.value_mask()
                };
                hits != 0
            }
            Stop::Certificate(f) => f.certificate(b).is_some(),
            Stop::Goal(g) => g.at_goal(b),
            Stop::Exhaust => false,
        }
    }
}

impl Policy for FixedOrderPolicy<'_> {
    fn next_test(&mut self, b: &PartialAssignment) -> Result<Option<usize>> {
        if self.done(b) {
            return Ok(None);
        }
        Ok(self.order.iter().copied().find(|&j| !b.is_tested(j)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Or,
    And,
}

fn sorted_by_key(n: usize, key: impl Fn(usize) -> f64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key(a).total_cmp(&key(b)));
    order
}

/// Increasing `c_i / p_i` for disjunctions, `c_i / (1 - p_i)` for
/// conjunctions, stopping at the first decisive outcome. Ties keep index
/// order.
pub fn cp_ratio_policy(d: &ProductDistribution, c: &CostVector, sense: Sense) -> FixedOrderPolicy<'static> {
    let decisive = |i: usize| match sense {
        Sense::Or => d.p(i),
        Sense::And => 1.0 - d.p(i),
    };
    let order = sorted_by_key(c.len(), |i| {
        let q = decisive(i);
        if q > 0.0 {
            c.get(i) / q
        } else {
            f64::INFINITY
        }
    });
    FixedOrderPolicy::new(order, Stop::FirstOutcome(sense == Sense::Or))
}

/// Increasing cost, testing everything unless a stop rule is attached.
pub fn cost_order_policy(c: &CostVector) -> FixedOrderPolicy<'static> {
    FixedOrderPolicy::new(sorted_by_key(c.len(), |i| c.get(i)), Stop::Exhaust)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::CdnfFormula;
    use crate::oracle::{optimal_expected_cost, OracleLimits};
    use crate::policy::expected_cost;

    #[test]
    fn cp_orders() {
        let c = CostVector::unit(2).unwrap();
        let d = ProductDistribution::sbfe(vec![0.2, 0.9]).unwrap();
        assert_eq!(cp_ratio_policy(&d, &c, Sense::Or).order(), &[1, 0]);
        let c = CostVector::new(vec![2.0, 1.0]).unwrap();
        let d = ProductDistribution::sbfe(vec![0.5, 0.25]).unwrap();
        assert_eq!(cp_ratio_policy(&d, &c, Sense::Or).order(), &[0, 1]);
    }

    #[test]
    fn cost_orders() {
        assert_eq!(
            cost_order_policy(&CostVector::new(vec![3.0, 1.0, 2.0]).unwrap()).order(),
            &[1, 2, 0]
        );
        assert_eq!(cost_order_policy(&CostVector::unit(3).unwrap()).order(), &[0, 1, 2]);
    }

    #[test]
    fn cp_matches_dp_on_small_disjunction() {
        let f = CdnfFormula::disjunction(3).unwrap();
        let d = ProductDistribution::sbfe(vec![0.3, 0.7, 0.5]).unwrap();
        let c = CostVector::new(vec![1.0, 4.0, 2.0]).unwrap();
        let (opt, _) = optimal_expected_cost(&f, &d, &c, OracleLimits::default()).unwrap();
        let cp = expected_cost(&cp_ratio_policy(&d, &c, Sense::Or), &d, &c).unwrap();
        assert!((cp - opt).abs() < 1e-9);
        let and = CdnfFormula::conjunction(3).unwrap();
        let (opt, _) = optimal_expected_cost(&and, &d, &c, OracleLimits::default()).unwrap();
        let cp = expected_cost(&cp_ratio_policy(&d, &c, Sense::And), &d, &c).unwrap();
        assert!((cp - opt).abs() < 1e-9);
    }

    #[test]
    fn certified_cost_order_stops() {
        let f = CdnfFormula::disjunction(3).unwrap();
        let c = CostVector::unit(3).unwrap();
        let mut p = cost_order_policy(&c).until_certified(&f);
        assert_eq!(p.next_test(&"1**".parse().unwrap()).unwrap(), None);
        assert_eq!(p.next_test(&"0**".parse().unwrap()).unwrap(), Some(1));
    }
}
