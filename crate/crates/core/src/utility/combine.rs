//! Disjunctive and conjunctive goal combination.
//!
//! `g∨(b) = Q0 Q1 - (Q0 - g0(b))(Q1 - g1(b))` reaches its goal `Q0 Q1` iff
//! either input reaches its own goal; `g∧(b) = g0(b) + g1(b)` reaches
//! `Q0 + Q1` iff both do. Both preserve monotonicity and submodularity.

use super::{checked_goal, DynUtility, Utility};
use crate::assignment::PartialAssignment;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Or<A, B> {
    left: A,
    right: B,
    goal: u64,
}

impl<A: Utility, B: Utility> Or<A, B> {
    pub fn left(&self) -> &A {
        &self.left
    }

    pub fn right(&self) -> &B {
        &self.right
    }
}

pub fn combine_or<A: Utility, B: Utility>(g0: A, g1: B) -> Result<Or<A, B>> {
    if g0.arity() != g1.arity() {
        return Err(Error::ArityMismatch {
            expected: g0.arity(),
            found: g1.arity(),
        });
    }
    let goal = checked_goal(g0.goal() as u128 * g1.goal() as u128)?;
    Ok(Or {
        left: g0,
        right: g1,
        goal,
    })
}

impl<A: Utility, B: Utility> Utility for Or<A, B> {
    fn arity(&self) -> usize {
        self.left.arity()
    }

    fn goal(&self) -> u64 {
        self.goal
    }

    fn value(&self, b: &PartialAssignment) -> u64 {
        let r0 = self.left.goal().saturating_sub(self.left.value(b)) as u128;
        let r1 = self.right.goal().saturating_sub(self.right.value(b)) as u128;
        (self.goal as u128).saturating_sub(r0 * r1) as u64
    }
}

#[derive(Clone, Debug)]
pub struct And<A, B> {
    left: A,
    right: B,
    goal: u64,
}

impl<A: Utility, B: Utility> And<A, B> {
    pub fn left(&self) -> &A {
        &self.left
    }

    pub fn right(&self) -> &B {
        &self.right
    }
}

pub fn combine_and<A: Utility, B: Utility>(g0: A, g1: B) -> Result<And<A, B>> {
    if g0.arity() != g1.arity() {
        return Err(Error::ArityMismatch {
            expected: g0.arity(),
            found: g1.arity(),
        });
    }
    let goal = checked_goal(g0.goal() as u128 + g1.goal() as u128)?;
    Ok(And {
        left: g0,
        right: g1,
        goal,
    })
}

impl<A: Utility, B: Utility> Utility for And<A, B> {
    fn arity(&self) -> usize {
        self.left.arity()
    }

    fn goal(&self) -> u64 {
        self.goal
    }

    fn value(&self, b: &PartialAssignment) -> u64 {
        self.left.value(b) + self.right.value(b)
    }
}

/// Conjunction of any number of utilities: `g = Σ g^(k)`, `Q = Σ Q^(k)`.
pub struct Sum {
    parts: Vec<DynUtility>,
    n: usize,
    goal: u64,
}

pub fn sum_all(n: usize, parts: Vec<DynUtility>) -> Result<Sum> {
    let mut goal: u128 = 0;
    for g in &parts {
        if g.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: g.arity(),
            });
        }
        goal += g.goal() as u128;
    }
    Ok(Sum {
        parts,
        n,
        goal: checked_goal(goal)?,
    })
}

impl Sum {
    pub fn parts(&self) -> &[DynUtility] {
        &self.parts
    }
}

impl Utility for Sum {
    fn arity(&self) -> usize {
        self.n
    }

    fn goal(&self) -> u64 {
        self.goal
    }

    fn value(&self, b: &PartialAssignment) -> u64 {
        self.parts.iter().map(|g| g.value(b)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Utility with a fixed value everywhere except the all-star point.
    struct Fixed {
        value: u64,
        goal: u64,
    }

    impl Utility for Fixed {
        fn arity(&self) -> usize {
            2
        }
        fn goal(&self) -> u64 {
            self.goal
        }
        fn value(&self, b: &PartialAssignment) -> u64 {
            if b.is_empty() {
                0
            } else {
                self.value
            }
        }
    }

    fn b() -> PartialAssignment {
        "1*".parse().unwrap()
    }

    #[test]
    fn or_formula() {
        let g = combine_or(Fixed { value: 2, goal: 3 }, Fixed { value: 1, goal: 2 }).unwrap();
        assert_eq!(g.goal(), 6);
        assert_eq!(g.value(&b()), 5);
        let g = combine_or(Fixed { value: 3, goal: 3 }, Fixed { value: 0, goal: 2 }).unwrap();
        assert_eq!(g.value(&b()), g.goal());
        assert_eq!(g.value(&PartialAssignment::stars(2)), 0);
    }

    #[test]
    fn and_formula() {
        let g = combine_and(Fixed { value: 2, goal: 3 }, Fixed { value: 2, goal: 2 }).unwrap();
        assert_eq!(g.goal(), 5);
        assert_eq!(g.value(&b()), 4);
        let g = combine_and(Fixed { value: 3, goal: 3 }, Fixed { value: 2, goal: 2 }).unwrap();
        assert!(g.at_goal(&b()));
        assert_eq!(g.value(&PartialAssignment::stars(2)), 0);
    }

    #[test]
    fn goal_overflow_is_reported() {
        let big = u64::MAX / 4;
        assert!(matches!(
            combine_or(Fixed { value: 0, goal: big }, Fixed { value: 0, goal: 8 }),
            Err(Error::GoalOverflow)
        ));
        assert!(matches!(
            combine_and(
                Fixed {
                    value: 0,
                    goal: i64::MAX as u64
                },
                Fixed { value: 0, goal: 1 }
            ),
            Err(Error::GoalOverflow)
        ));
    }

    #[test]
    fn arity_mismatch() {
        let one = super::super::ZeroUtility::new(1);
        assert!(matches!(
            combine_or(one, Fixed { value: 0, goal: 1 }),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
