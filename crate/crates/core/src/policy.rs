//! Adaptive policies and exact evaluation of their expected cost.

use crate::assignment::PartialAssignment;
use crate::distribution::{CostVector, ProductDistribution};
use crate::error::{Error, Result};
use crate::trace::RunTrace;
use crate::tree::DecisionTree;

/// An adaptive next-test selector.
///
/// A policy is single-run mutable state. `next_test` is called with the
/// outcomes observed so far and returns the next untested index or `None`
/// to stop. Cloning a policy forks its state, which is how the exact
/// evaluators explore both outcomes of a test.
pub trait Policy: Clone {
    fn next_test(&mut self, b: &PartialAssignment) -> Result<Option<usize>>;
}

fn checked_pick(pick: Option<usize>, b: &PartialAssignment) -> Result<Option<usize>> {
    match pick {
        Some(j) if j >= b.len() => Err(Error::IndexOutOfRange { index: j, n: b.len() }),
        Some(j) if b.is_tested(j) => Err(Error::NonTerminating {
            n: b.len(),
            assignment: b.to_string(),
        }),
        other => Ok(other),
    }
}

/// Exact expected cost of `policy` on `x ~ D_p`, by recursive traversal of
/// the decision tree it induces. Branches of probability zero are skipped.
pub fn expected_cost<P: Policy>(policy: &P, d: &ProductDistribution, c: &CostVector) -> Result<f64> {
    fn walk<P: Policy>(mut policy: P, b: PartialAssignment, d: &ProductDistribution, c: &CostVector) -> Result<f64> {
        let Some(j) = checked_pick(policy.next_test(&b)?, &b)? else {
            return Ok(0.0);
        };
        let p = d.p(j);
        let v1 = if p > 0.0 {
            walk(policy.clone(), b.with(j, true), d, c)?
        } else {
            0.0
        };
        let v0 = if p < 1.0 {
            walk(policy, b.with(j, false), d, c)?
        } else {
            0.0
        };
        Ok(c.get(j) + p * v1 + (1.0 - p) * v0)
    }
    if d.len() != c.len() {
        return Err(Error::ArityMismatch {
            expected: d.len(),
            found: c.len(),
        });
    }
    walk(policy.clone(), PartialAssignment::stars(d.len()), d, c)
}

/// Materializes the full decision tree of `policy`; leaves carry the final
/// partial assignment.
pub fn materialize<P: Policy>(policy: &P, n: usize) -> Result<DecisionTree<PartialAssignment>> {
    fn walk<P: Policy>(mut policy: P, b: PartialAssignment) -> Result<DecisionTree<PartialAssignment>> {
        match checked_pick(policy.next_test(&b)?, &b)? {
            None => Ok(DecisionTree::Leaf(b)),
            Some(j) => {
                let one = walk(policy.clone(), b.with(j, true))?;
                let zero = walk(policy, b.with(j, false))?;
                Ok(DecisionTree::test(j, zero, one))
            }
        }
    }
    walk(policy.clone(), PartialAssignment::stars(n))
}

/// Runs `policy` against an outcome oracle, recording the tests performed.
pub fn run<P: Policy>(
    policy: &mut P,
    n: usize,
    c: &CostVector,
    mut outcome: impl FnMut(usize) -> bool,
) -> Result<RunTrace> {
    let mut b = PartialAssignment::stars(n);
    let mut trace = RunTrace::new(n);
    while let Some(j) = checked_pick(policy.next_test(&b)?, &b)? {
        let l = outcome(j);
        b = b.with(j, l);
        trace.push(j, l, c.get(j));
    }
    Ok(trace)
}

/// Outcome oracle reading bits from a full assignment.
pub fn oracle_from(x: PartialAssignment) -> impl FnMut(usize) -> bool {
    move |i| x.get(i) == Some(true)
}
