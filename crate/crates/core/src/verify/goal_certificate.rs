use serde::Serialize;

use crate::assignment::PartialAssignment;
use crate::error::{Error, Result};
use crate::formula::BooleanFunction;
use crate::utility::Utility;

/// Largest arity for the `3^n` scan.
pub const GOAL_CERTIFICATE_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoalMismatch {
    pub b: String,
    pub at_goal: bool,
    pub expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoalCertificateReport {
    pub checked: u64,
    pub mismatch: Option<GoalMismatch>,
}

impl GoalCertificateReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// `g(b) = Q` exactly when `covered(b)`, over all `3^n` partial assignments.
pub fn check_goal_predicate<U: Utility + ?Sized>(
    g: &U,
    covered: impl Fn(&PartialAssignment) -> bool,
) -> Result<GoalCertificateReport> {
    let n = g.arity();
    if n > GOAL_CERTIFICATE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "goal-certificate scan",
            n,
            limit: GOAL_CERTIFICATE_LIMIT,
        });
    }
    let mut checked = 0;
    for b in PartialAssignment::all(n) {
        checked += 1;
        let at_goal = g.at_goal(&b);
        let expected = covered(&b);
        if at_goal != expected {
            return Ok(GoalCertificateReport {
                checked,
                mismatch: Some(GoalMismatch {
                    b: b.to_string(),
                    at_goal,
                    expected,
                }),
            });
        }
    }
    Ok(GoalCertificateReport {
        checked,
        mismatch: None,
    })
}

/// `g(b) = Q` iff `b` is a 0- or 1-certificate of `f`. Certificates are
/// decided by scanning completions, independent of any shortcut in `f`.
pub fn check_goal_certificate<U, F>(g: &U, f: &F) -> Result<GoalCertificateReport>
where
    U: Utility + ?Sized,
    F: BooleanFunction + ?Sized,
{
    if g.arity() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: g.arity(),
        });
    }
    check_goal_predicate(g, |b| crate::formula::exhaustive_certificate(f, b).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{CdnfFormula, ThresholdFormula, TruthTable};
    use crate::utility::{cdnf_utility, threshold_utility, truth_table_utility, ZeroUtility};

    #[test]
    fn constructions_pass() {
        let f = CdnfFormula::new(3, &[vec![1, 2], vec![-1, 3]], &[vec![1, 3], vec![-1, 2]]).unwrap();
        assert!(check_goal_certificate(&cdnf_utility(&f).unwrap(), &f).unwrap().passed());
        let t = ThresholdFormula::new(vec![2, -3, 1], 0).unwrap();
        assert!(check_goal_certificate(&threshold_utility(&t).unwrap(), &t)
            .unwrap()
            .passed());
        let tt = TruthTable::from_fn(&t).unwrap();
        let r = check_goal_certificate(&truth_table_utility(&tt).unwrap(), &tt).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 27);
    }

    #[test]
    fn mismatch_reported() {
        let f = CdnfFormula::disjunction(2).unwrap();
        let r = check_goal_certificate(&ZeroUtility::new(2), &f).unwrap();
        // goal 0 is reached everywhere, including at "**"
        assert_eq!(r.mismatch.unwrap().b, "**");
    }
}
