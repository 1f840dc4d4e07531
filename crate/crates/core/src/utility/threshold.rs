use super::{checked_goal, combine_or, Or, Utility};
use crate::assignment::PartialAssignment;
use crate::error::{Error, Result};
use crate::formula::{LinearForm, ThresholdFormula};

/// `min(goal, min(b) - R_min)`: how far the guaranteed minimum of a linear
/// form has risen. Reaches `goal = -R_min` once `min(b) >= 0`.
#[derive(Clone, Debug)]
pub struct LowerBoundGain {
    form: LinearForm,
    r_min: i128,
    goal: u64,
}

impl LowerBoundGain {
    /// Goal `max(0, -R_min)`; a zero goal makes the utility identically 0.
    pub fn new(form: LinearForm) -> Result<Self> {
        let r_min = form.min(&PartialAssignment::stars(form.arity()));
        let goal = checked_goal((-r_min).max(0) as u128)?;
        Ok(Self { form, r_min, goal })
    }
}

impl Utility for LowerBoundGain {
    fn arity(&self) -> usize {
        self.form.arity()
    }
    fn goal(&self) -> u64 {
        self.goal
    }
    fn value(&self, b: &PartialAssignment) -> u64 {
        (self.form.min(b) - self.r_min).min(self.goal as i128) as u64
    }
}

/// `min(goal, R_max - max(b))`: how far the guaranteed maximum has fallen.
#[derive(Clone, Debug)]
pub struct UpperBoundGain {
    form: LinearForm,
    r_max: i128,
    goal: u64,
}

impl UpperBoundGain {
    /// Goal `max(0, R_max + shift)`. Thresholds use shift 1 (certified once
    /// `max(b) < 0`); ranking pairs use shift 0 (certified once `max(b) <= 0`).
    pub fn new(form: LinearForm, shift: i128) -> Result<Self> {
        let r_max = form.max(&PartialAssignment::stars(form.arity()));
        let goal = checked_goal((r_max + shift).max(0) as u128)?;
        Ok(Self { form, r_max, goal })
    }
}

impl Utility for UpperBoundGain {
    fn arity(&self) -> usize {
        self.form.arity()
    }
    fn goal(&self) -> u64 {
        self.goal
    }
    fn value(&self, b: &PartialAssignment) -> u64 {
        (self.r_max - self.form.max(b)).min(self.goal as i128) as u64
    }
}

/// Assignment-feasible utility for `Σ a_i x_i >= θ` with goal
/// `Q = Q1 Q0`, `Q1 = -R_min`, `Q0 = R_max + 1`.
#[derive(Clone, Debug)]
pub struct ThresholdUtility {
    inner: Or<LowerBoundGain, UpperBoundGain>,
}

impl ThresholdUtility {
    /// `g1`, at goal exactly on 1-certificates.
    pub fn one_side(&self) -> &LowerBoundGain {
        self.inner.left()
    }

    /// `g0`, at goal exactly on 0-certificates.
    pub fn zero_side(&self) -> &UpperBoundGain {
        self.inner.right()
    }

    /// Which value `b` certifies, if any.
    pub fn decode(&self, b: &PartialAssignment) -> Option<bool> {
        if self.one_side().at_goal(b) {
            Some(true)
        } else if self.zero_side().at_goal(b) {
            Some(false)
        } else {
            None
        }
    }
}

impl Utility for ThresholdUtility {
    fn arity(&self) -> usize {
        self.inner.arity()
    }
    fn goal(&self) -> u64 {
        self.inner.goal()
    }
    fn value(&self, b: &PartialAssignment) -> u64 {
        self.inner.value(b)
    }
}

/// Fails with [`Error::ConstantFunction`] when `R_min >= 0` or `R_max < 0`.
pub fn threshold_utility(f: &ThresholdFormula) -> Result<ThresholdUtility> {
    if let Some(value) = f.constant_value() {
        return Err(Error::ConstantFunction { value });
    }
    let one = LowerBoundGain::new(f.form().clone())?;
    let zero = UpperBoundGain::new(f.form().clone(), 1)?;
    Ok(ThresholdUtility {
        inner: combine_or(one, zero)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn or_of_two_values() {
        let g = threshold_utility(&ThresholdFormula::new(vec![1, 1], 1).unwrap()).unwrap();
        assert_eq!(g.one_side().goal(), 1);
        assert_eq!(g.zero_side().goal(), 2);
        assert_eq!(g.goal(), 2);
        assert_eq!(g.value(&pa("0*")), 1);
        assert_eq!(g.value(&pa("00")), 2);
        assert_eq!(g.value(&pa("1*")), 2);
        assert_eq!(g.decode(&pa("00")), Some(false));
        assert_eq!(g.decode(&pa("*1")), Some(true));
        assert_eq!(g.decode(&pa("0*")), None);
    }

    #[test]
    fn constant_formula_short_circuits() {
        assert_eq!(
            threshold_utility(&ThresholdFormula::new(vec![1, 1], 3).unwrap()).unwrap_err(),
            Error::ConstantFunction { value: false }
        );
        assert_eq!(
            threshold_utility(&ThresholdFormula::new(vec![1, 1], 0).unwrap()).unwrap_err(),
            Error::ConstantFunction { value: true }
        );
    }

    #[test]
    fn goal_matches_range_product() {
        let f = ThresholdFormula::new(vec![3, -2, 5, -1], 2).unwrap();
        let g = threshold_utility(&f).unwrap();
        assert_eq!(g.goal() as i128, (-f.r_min()) * (f.r_max() + 1));
    }

    #[test]
    fn huge_goal_overflows() {
        let f = ThresholdFormula::new(vec![1 << 40, -(1 << 40)], 0).unwrap();
        assert_eq!(threshold_utility(&f).unwrap_err(), Error::GoalOverflow);
    }
}
