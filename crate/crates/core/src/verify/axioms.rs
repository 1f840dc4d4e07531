use rand::Rng;
use serde::Serialize;

use crate::assignment::PartialAssignment;
use crate::distribution::seeded_rng;
use crate::error::{Error, Result};
use crate::utility::Utility;

/// Largest arity checked exhaustively.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomMode {
    /// Every `b`, every `b' ∼ b`, every untested `i` and bit `l`.
    Exhaustive,
    /// Random `(b, b', i, l)` draws.
    Random { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    NonzeroAtStars {
        value: u64,
    },
    Monotone {
        b: String,
        i: usize,
        l: bool,
        before: u64,
        after: u64,
    },
    Submodular {
        b: String,
        b_prime: String,
        i: usize,
        l: bool,
        gain: i128,
        later_gain: i128,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: u64,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn gain<U: Utility + ?Sized>(g: &U, b: &PartialAssignment, i: usize, l: bool) -> i128 {
    g.value(&b.with(i, l)) as i128 - g.value(b) as i128
}

struct Checker<'a, U: ?Sized> {
    g: &'a U,
    checks: u64,
}

impl<U: Utility + ?Sized> Checker<'_, U> {
    fn monotone(&mut self, b: &PartialAssignment, i: usize, l: bool) -> Option<AxiomViolation> {
        self.checks += 1;
        let before = self.g.value(b);
        let after = self.g.value(&b.with(i, l));
        (after < before).then(|| AxiomViolation::Monotone {
            b: b.to_string(),
            i,
            l,
            before,
            after,
        })
    }

    fn submodular(
        &mut self,
        b: &PartialAssignment,
        b_prime: &PartialAssignment,
        i: usize,
        l: bool,
    ) -> Option<AxiomViolation> {
        self.checks += 1;
        let early = gain(self.g, b, i, l);
        let later = gain(self.g, b_prime, i, l);
        (early < later).then(|| AxiomViolation::Submodular {
            b: b.to_string(),
            b_prime: b_prime.to_string(),
            i,
            l,
            gain: early,
            later_gain: later,
        })
    }
}

/// Checks that `g` is zero at the all-star assignment, monotone and
/// submodular. Reports the first counterexample found.
pub fn check_axioms<U: Utility + ?Sized>(g: &U, mode: AxiomMode) -> Result<AxiomReport> {
    let n = g.arity();
    let root = g.value(&PartialAssignment::stars(n));
    let mut ck = Checker { g, checks: 1 };
    let report = |ck: &Checker<U>, violation| {
        Ok(AxiomReport {
            checks: ck.checks,
            violation,
        })
    };
    if root != 0 {
        return report(&ck, Some(AxiomViolation::NonzeroAtStars { value: root }));
    }
    match mode {
        AxiomMode::Exhaustive => {
            if n > EXHAUSTIVE_AXIOM_LIMIT {
                return Err(Error::LimitExceeded {
                    what: "exhaustive axiom check",
                    n,
                    limit: EXHAUSTIVE_AXIOM_LIMIT,
                });
            }
            let all: Vec<PartialAssignment> = PartialAssignment::all(n).collect();
            for b in &all {
                for i in b.untested() {
                    for l in [false, true] {
                        if let Some(v) = ck.monotone(b, i, l) {
                            return report(&ck, Some(v));
                        }
                    }
                }
                for b_prime in all.iter().filter(|x| x.extends(b) && *x != b) {
                    for i in b_prime.untested() {
                        for l in [false, true] {
                            if let Some(v) = ck.submodular(b, b_prime, i, l) {
                                return report(&ck, Some(v));
                            }
                        }
                    }
                }
            }
        }
        AxiomMode::Random { trials, seed } => {
            let mut rng = seeded_rng(seed);
            let mut done = 0;
            while done < trials {
                let mut b = PartialAssignment::stars(n);
                for i in 0..n {
                    if rng.gen_bool(0.5) {
                        b = b.with(i, rng.gen());
                    }
                }
                let mut b_prime = b;
                for i in b.untested() {
                    if rng.gen_bool(0.5) {
                        b_prime = b_prime.with(i, rng.gen());
                    }
                }
                let free: Vec<usize> = b_prime.untested().collect();
                if free.is_empty() {
                    continue;
                }
                let i = free[rng.gen_range(0..free.len())];
                let l = rng.gen();
                done += 1;
                if let Some(v) = ck
                    .monotone(&b_prime, i, l)
                    .or_else(|| ck.submodular(&b, &b_prime, i, l))
                {
                    return report(&ck, Some(v));
                }
            }
        }
    }
    report(&ck, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{CdnfFormula, ThresholdFormula};
    use crate::utility::{cdnf_utility, threshold_utility};

    #[test]
    fn constructions_pass() {
        let g = cdnf_utility(&CdnfFormula::conjunction(2).unwrap()).unwrap();
        assert!(check_axioms(&g, AxiomMode::Exhaustive).unwrap().passed());
        let g = threshold_utility(&ThresholdFormula::new(vec![1, 1], 1).unwrap()).unwrap();
        assert!(check_axioms(&g, AxiomMode::Exhaustive).unwrap().passed());
        let r = check_axioms(&g, AxiomMode::Random { trials: 500, seed: 3 }).unwrap();
        assert!(r.passed());
        assert!(r.checks >= 1000);
    }

    struct LastTestJump(usize);
    impl Utility for LastTestJump {
        fn arity(&self) -> usize {
            self.0
        }
        fn goal(&self) -> u64 {
            1
        }
        fn value(&self, b: &PartialAssignment) -> u64 {
            u64::from(b.is_full())
        }
    }

    #[test]
    fn jump_at_last_test_is_not_submodular() {
        let r = check_axioms(&LastTestJump(2), AxiomMode::Exhaustive).unwrap();
        assert!(matches!(r.violation, Some(AxiomViolation::Submodular { .. })));
        let r = check_axioms(&LastTestJump(3), AxiomMode::Random { trials: 1000, seed: 1 }).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn exhaustive_limit() {
        assert!(check_axioms(&LastTestJump(7), AxiomMode::Exhaustive).is_err());
    }
}
