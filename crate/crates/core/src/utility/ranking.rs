use super::{combine_or, LowerBoundGain, Or, UpperBoundGain, Utility};
use crate::assignment::PartialAssignment;
use crate::error::{Error, Result};
use crate::formula::LinearSystem;

/// Utility for deciding the order of one pair `f_i, f_j` of linear
/// functions. Built on `f_ij = f_i - f_j`: the "less" side reaches its goal
/// `R_max(ij)` once `f_i <= f_j` on every completion, the "greater" side
/// reaches `-R_min(ij)` once `f_i >= f_j` on every completion. A side whose
/// relation already holds everywhere has goal 0.
#[derive(Clone, Debug)]
pub struct RankingPairUtility {
    pair: (usize, usize),
    inner: Or<UpperBoundGain, LowerBoundGain>,
}

impl RankingPairUtility {
    pub fn pair(&self) -> (usize, usize) {
        self.pair
    }

    /// `f_i <= f_j` on every completion of `b`.
    pub fn known_le(&self, b: &PartialAssignment) -> bool {
        self.inner.left().at_goal(b)
    }

    /// `f_i >= f_j` on every completion of `b`.
    pub fn known_ge(&self, b: &PartialAssignment) -> bool {
        self.inner.right().at_goal(b)
    }
}

impl Utility for RankingPairUtility {
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

pub fn ranking_pair_utility(sys: &LinearSystem, i: usize, j: usize) -> Result<RankingPairUtility> {
    if i >= j || j >= sys.len() {
        return Err(Error::InvalidFormula(format!(
            "ranking pair ({i}, {j}) needs i < j < {}",
            sys.len()
        )));
    }
    let diff = sys.difference(i, j);
    let less = UpperBoundGain::new(diff.clone(), 0)?;
    let greater = LowerBoundGain::new(diff)?;
    Ok(RankingPairUtility {
        pair: (i, j),
        inner: combine_or(less, greater)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn single_variable_pair() {
        let sys = LinearSystem::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let g = ranking_pair_utility(&sys, 0, 1).unwrap();
        assert_eq!(g.goal(), 1);
        assert_eq!(g.value(&pa("1*")), 1);
        assert!(g.known_ge(&pa("1*")));
        assert!(!g.known_le(&pa("1*")));
        assert_eq!(g.value(&pa("**")), 0);
    }

    #[test]
    fn identical_functions_have_goal_zero() {
        let sys = LinearSystem::new(2, vec![vec![2, -1], vec![2, -1]]).unwrap();
        let g = ranking_pair_utility(&sys, 0, 1).unwrap();
        assert_eq!(g.goal(), 0);
        assert!(g.known_le(&pa("**")) && g.known_ge(&pa("**")));
    }

    #[test]
    fn bad_pair_rejected() {
        let sys = LinearSystem::new(1, vec![vec![1], vec![2]]).unwrap();
        assert!(ranking_pair_utility(&sys, 1, 0).is_err());
        assert!(ranking_pair_utility(&sys, 0, 2).is_err());
    }
}
