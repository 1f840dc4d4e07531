//! Exact small-instance oracles: the optimal-strategy dynamic program and
//! expected minimum-certificate cost.

use std::collections::HashMap;

use crate::assignment::{BitIter, PartialAssignment};
use crate::distribution::{CostVector, ProductDistribution, EPS};
use crate::error::{Error, Result};
use crate::formula::{BooleanFunction, CdnfFormula};
use crate::tree::DecisionTree;

/// Guards for the exhaustive oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest `n` for the `3^n` dynamic programs.
    pub dp_max_n: usize,
    /// Largest `n` for `2^n` input enumeration.
    pub enumeration_max_n: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            dp_max_n: 14,
            enumeration_max_n: 20,
        }
    }
}

impl OracleLimits {
    pub fn check_dp(&self, n: usize) -> Result<()> {
        if n > self.dp_max_n {
            return Err(Error::LimitExceeded {
                what: "dynamic-programming",
                n,
                limit: self.dp_max_n,
            });
        }
        Ok(())
    }

    pub fn check_enumeration(&self, n: usize) -> Result<()> {
        if n > self.enumeration_max_n {
            return Err(Error::LimitExceeded {
                what: "enumeration",
                n,
                limit: self.enumeration_max_n,
            });
        }
        Ok(())
    }
}

fn check_inputs(d: &ProductDistribution, c: &CostVector) -> Result<()> {
    if d.len() != c.len() {
        return Err(Error::ArityMismatch {
            expected: d.len(),
            found: c.len(),
        });
    }
    for (index, &value) in d.probs().iter().enumerate() {
        if value <= 0.0 || value >= 1.0 {
            return Err(Error::InvalidProbability { index, value });
        }
    }
    Ok(())
}

/// Minimum expected cost of any strategy evaluating `f`, with an optimal
/// tree. Ties go to the lowest index.
pub fn optimal_expected_cost<F: BooleanFunction + ?Sized>(
    f: &F,
    d: &ProductDistribution,
    c: &CostVector,
    limits: OracleLimits,
) -> Result<(f64, DecisionTree<bool>)> {
    if f.arity() != d.len() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: d.len(),
        });
    }
    optimal_tree(d, c, limits, |b| f.certificate(b).value())
}

/// The same dynamic program for an arbitrary stopping condition: `terminal`
/// returns the leaf label once `b` carries enough information. Every full
/// assignment must be terminal.
pub fn optimal_tree<L>(
    d: &ProductDistribution,
    c: &CostVector,
    limits: OracleLimits,
    terminal: impl Fn(&PartialAssignment) -> Option<L>,
) -> Result<(f64, DecisionTree<L>)> {
    check_inputs(d, c)?;
    limits.check_dp(d.len())?;
    let mut solver = Solver {
        d,
        c,
        terminal: &terminal,
        memo: HashMap::new(),
    };
    let root = PartialAssignment::stars(d.len());
    let value = solver.solve(root)?;
    let tree = solver.build(root);
    Ok((value, tree))
}

struct Solver<'a, L, T: Fn(&PartialAssignment) -> Option<L>> {
    d: &'a ProductDistribution,
    c: &'a CostVector,
    terminal: &'a T,
    // `None` marks terminal states
    memo: HashMap<PartialAssignment, Option<(f64, usize)>>,
}

impl<L, T: Fn(&PartialAssignment) -> Option<L>> Solver<'_, L, T> {
    fn solve(&mut self, b: PartialAssignment) -> Result<f64> {
        if let Some(entry) = self.memo.get(&b) {
            return Ok(entry.map_or(0.0, |(v, _)| v));
        }
        if (self.terminal)(&b).is_some() {
            self.memo.insert(b, None);
            return Ok(0.0);
        }
        if b.is_full() {
            return Err(Error::NonTerminating {
                n: b.len(),
                assignment: b.to_string(),
            });
        }
        let mut best: Option<(f64, usize)> = None;
        for j in b.untested() {
            let p = self.d.p(j);
            let v1 = self.solve(b.with(j, true))?;
            let v0 = self.solve(b.with(j, false))?;
            let v = self.c.get(j) + p * v1 + (1.0 - p) * v0;
            if best.is_none_or(|(bv, _)| v < bv - EPS) {
                best = Some((v, j));
            }
        }
        self.memo.insert(b, best);
        Ok(best.map_or(0.0, |(v, _)| v))
    }

    fn build(&self, b: PartialAssignment) -> DecisionTree<L> {
        match self.memo.get(&b).copied().flatten() {
            None => DecisionTree::Leaf((self.terminal)(&b).expect("terminal state")),
            Some((_, j)) => DecisionTree::test(j, self.build(b.with(j, false)), self.build(b.with(j, true))),
        }
    }
}

/// `E_x[cost of the cheapest certificate contained in x]`, computed over the
/// `3^n` lattice: a sub-assignment of a non-certificate is never a
/// certificate, so the cheapest certificate below `b` is found by dropping
/// one tested position at a time.
pub fn expected_certificate_cost<F: BooleanFunction + ?Sized>(
    f: &F,
    d: &ProductDistribution,
    c: &CostVector,
    limits: OracleLimits,
) -> Result<f64> {
    let n = f.arity();
    limits.check_dp(n)?;
    if d.len() != n || c.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: d.len(),
        });
    }
    let mut memo: HashMap<PartialAssignment, f64> = HashMap::new();
    fn cheapest<F: BooleanFunction + ?Sized>(
        f: &F,
        c: &CostVector,
        b: PartialAssignment,
        memo: &mut HashMap<PartialAssignment, f64>,
    ) -> f64 {
        if let Some(&v) = memo.get(&b) {
            return v;
        }
        let v = if f.certificate(&b).is_some() {
            b.dom()
                .map(|i| cheapest(f, c, b.forget(i), memo))
                .fold(c.cost_of(&b), f64::min)
        } else {
            f64::INFINITY
        };
        memo.insert(b, v);
        v
    }
    let mut total = 0.0;
    for x in PartialAssignment::all_full(n) {
        total += d.prob_of(&x) * cheapest(f, c, x, &mut memo);
    }
    Ok(total)
}

/// Expected minimum-certificate cost for a CDNF formula via weighted set
/// cover over clauses (when `f(x) = 1`) or terms (when `f(x) = 0`). Cost is
/// `2^n` inputs times `2^max(k, d)` cover states.
pub fn cdnf_expected_certificate_cost(
    f: &CdnfFormula,
    d: &ProductDistribution,
    c: &CostVector,
    limits: OracleLimits,
) -> Result<f64> {
    let n = f.arity();
    limits.check_enumeration(n)?;
    let width = f.num_clauses().max(f.num_terms());
    if width > 20 {
        return Err(Error::LimitExceeded {
            what: "certificate cover",
            n: width,
            limit: 20,
        });
    }
    let mut total = 0.0;
    for x in PartialAssignment::all_full(n) {
        let value = f.evaluate(&x);
        let sets = if value { f.clauses() } else { f.terms() };
        // variable i covers the sets whose literal on x_i agrees with the target side
        let single = |i: usize| -> u64 {
            let b = PartialAssignment::stars(n).with(i, x.get(i) == Some(true));
            sets.iter().enumerate().fold(0u64, |m, (k, s)| {
                let hit = if value {
                    s.has_true_literal(&b)
                } else {
                    s.has_false_literal(&b)
                };
                if hit {
                    m | 1 << k
                } else {
                    m
                }
            })
        };
        let full = (1u64 << sets.len()) - 1;
        let mut best = vec![f64::INFINITY; 1 << sets.len()];
        best[0] = 0.0;
        for i in 0..n {
            let cover = single(i);
            if cover == 0 {
                continue;
            }
            for mask in (0..=full).rev() {
                let cur = best[mask as usize];
                if cur.is_finite() {
                    let next = (mask | cover) as usize;
                    best[next] = best[next].min(cur + c.get(i));
                }
            }
        }
        total += d.prob_of(&x) * best[full as usize];
    }
    Ok(total)
}

/// Cheapest certificate contained in `x`, by enumerating subsets of tested
/// positions. Exponential; for cross-checks only.
pub fn cheapest_certificate_in<F: BooleanFunction + ?Sized>(f: &F, c: &CostVector, x: &PartialAssignment) -> f64 {
    crate::assignment::SubmaskIter::new(x.known_mask())
        .map(|mask| x.restrict(mask))
        .filter(|b| f.certificate(b).is_some())
        .map(|b| BitIter(b.known_mask()).map(|i| c.get(i)).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{CdnfFormula, ThresholdFormula};

    #[test]
    fn disjunction_of_two() {
        let f = CdnfFormula::disjunction(2).unwrap();
        let d = ProductDistribution::uniform(2).unwrap();
        let c = CostVector::unit(2).unwrap();
        let (v, t) = optimal_expected_cost(&f, &d, &c, OracleLimits::default()).unwrap();
        assert!((v - 1.5).abs() < 1e-12);
        assert_eq!(t.expected_cost(&d, &c), v);
    }

    #[test]
    fn conjunction_tests_less_likely_first() {
        let f = CdnfFormula::conjunction(2).unwrap();
        let d = ProductDistribution::sbfe(vec![0.9, 0.5]).unwrap();
        let c = CostVector::unit(2).unwrap();
        let (v, t) = optimal_expected_cost(&f, &d, &c, OracleLimits::default()).unwrap();
        assert!((v - 1.5).abs() < 1e-12);
        assert!(matches!(t, DecisionTree::Test { var: 1, .. }));
    }

    #[test]
    fn constant_function_costs_nothing() {
        let f = CdnfFormula::new(2, &[], &[vec![1], vec![-1]]).unwrap();
        let d = ProductDistribution::uniform(2).unwrap();
        let c = CostVector::unit(2).unwrap();
        let (v, t) = optimal_expected_cost(&f, &d, &c, OracleLimits::default()).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(t, DecisionTree::Leaf(true));
    }

    #[test]
    fn limits_and_degenerate_probabilities() {
        let f = ThresholdFormula::new(vec![1; 3], 2).unwrap();
        let c = CostVector::unit(3).unwrap();
        let d = ProductDistribution::sssc(vec![0.5, 1.0, 0.5]).unwrap();
        assert!(matches!(
            optimal_expected_cost(&f, &d, &c, OracleLimits::default()),
            Err(Error::InvalidProbability { index: 1, .. })
        ));
        let d = ProductDistribution::uniform(3).unwrap();
        let tight = OracleLimits {
            dp_max_n: 2,
            ..Default::default()
        };
        assert!(matches!(
            optimal_expected_cost(&f, &d, &c, tight),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn certificate_cost_routes_agree() {
        let f = CdnfFormula::new(3, &[vec![1, 2], vec![-1, 3]], &[vec![1, 3], vec![-1, 2]]).unwrap();
        let d = ProductDistribution::sbfe(vec![0.3, 0.6, 0.8]).unwrap();
        let c = CostVector::new(vec![1.0, 2.0, 3.0]).unwrap();
        let lattice = expected_certificate_cost(&f, &d, &c, OracleLimits::default()).unwrap();
        let cover = cdnf_expected_certificate_cost(&f, &d, &c, OracleLimits::default()).unwrap();
        let brute: f64 = PartialAssignment::all_full(3)
            .map(|x| d.prob_of(&x) * cheapest_certificate_in(&f, &c, &x))
            .sum();
        assert!((lattice - brute).abs() < 1e-12);
        assert!((cover - brute).abs() < 1e-12);
    }
}
