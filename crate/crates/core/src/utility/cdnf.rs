use super::{combine_or, Or, Utility};
use crate::assignment::PartialAssignment;
use crate::error::{Error, Result};
use crate::formula::CdnfFormula;
use crate::tree::DecisionTree;

/// Number of DNF terms falsified by `b`; goal `d`.
#[derive(Clone, Debug)]
pub struct FalsifiedTerms(CdnfFormula);

/// Number of CNF clauses satisfied by `b`; goal `k`.
#[derive(Clone, Debug)]
pub struct SatisfiedClauses(CdnfFormula);

impl Utility for FalsifiedTerms {
    fn arity(&self) -> usize {
        crate::formula::BooleanFunction::arity(&self.0)
    }
    fn goal(&self) -> u64 {
        self.0.num_terms() as u64
    }
    fn value(&self, b: &PartialAssignment) -> u64 {
        self.0.falsified_terms(b) as u64
    }
}

impl Utility for SatisfiedClauses {
    fn arity(&self) -> usize {
        crate::formula::BooleanFunction::arity(&self.0)
    }
    fn goal(&self) -> u64 {
        self.0.num_clauses() as u64
    }
    fn value(&self, b: &PartialAssignment) -> u64 {
        self.0.satisfied_clauses(b) as u64
    }
}

/// OR of the falsified-terms and satisfied-clauses counters, goal `k d`.
pub type CdnfUtility = Or<FalsifiedTerms, SatisfiedClauses>;

pub fn cdnf_utility(f: &CdnfFormula) -> Result<CdnfUtility> {
    combine_or(FalsifiedTerms(f.clone()), SatisfiedClauses(f.clone()))
}

/// The value `b` certifies: all terms falsified gives 0, all clauses
/// satisfied gives 1.
pub fn decode_cdnf(g: &CdnfUtility, b: &PartialAssignment) -> Option<bool> {
    if g.left().at_goal(b) {
        Some(false)
    } else if g.right().at_goal(b) {
        Some(true)
    } else {
        None
    }
}

/// CDNF of the function a decision tree computes: one term per path to a
/// 1-leaf, one clause (the negated path) per path to a 0-leaf.
pub fn decision_tree_to_cdnf(t: &DecisionTree<bool>, n: usize) -> Result<CdnfFormula> {
    let mut clauses = Vec::new();
    let mut terms = Vec::new();
    for (b, &leaf) in t.paths(n) {
        let literal = |i: usize| {
            let var = i as i64 + 1;
            if b.get(i) == Some(leaf) {
                var
            } else {
                -var
            }
        };
        let lits: Vec<i64> = b.dom().map(literal).collect();
        if leaf {
            terms.push(lits);
        } else {
            clauses.push(lits);
        }
    }
    if clauses.is_empty() || terms.is_empty() {
        return Err(Error::ConstantTree);
    }
    CdnfFormula::new(n, &clauses, &terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn conjunction_values() {
        let g = cdnf_utility(&CdnfFormula::conjunction(2).unwrap()).unwrap();
        assert_eq!(g.goal(), 2);
        assert_eq!(g.value(&pa("1*")), 1);
        assert_eq!(g.value(&pa("0*")), 2);
        assert_eq!(g.value(&pa("**")), 0);
        assert_eq!(g.value(&pa("11")), 2);
    }

    #[test]
    fn single_test_tree() {
        let t = DecisionTree::test(0, DecisionTree::Leaf(false), DecisionTree::Leaf(true));
        let f = decision_tree_to_cdnf(&t, 1).unwrap();
        assert_eq!(f.clauses()[0].literals(), vec![1]);
        assert_eq!(f.terms()[0].literals(), vec![1]);
    }

    #[test]
    fn conjunction_tree() {
        use crate::formula::BooleanFunction;
        let t = DecisionTree::test(
            0,
            DecisionTree::Leaf(false),
            DecisionTree::test(1, DecisionTree::Leaf(false), DecisionTree::Leaf(true)),
        );
        let f = decision_tree_to_cdnf(&t, 2).unwrap();
        assert_eq!(f.num_clauses() + f.num_terms(), t.num_leaves());
        assert_eq!(f.terms()[0].literals(), vec![1, 2]);
        for x in PartialAssignment::all_full(2) {
            assert_eq!(f.evaluate(&x), *t.evaluate(&x));
        }
        let g = cdnf_utility(&f).unwrap();
        assert_eq!(decode_cdnf(&g, &pa("0*")), Some(false));
        assert_eq!(decode_cdnf(&g, &pa("11")), Some(true));
        assert_eq!(decode_cdnf(&g, &pa("1*")), None);
    }

    #[test]
    fn constant_tree_rejected() {
        assert_eq!(
            decision_tree_to_cdnf(&DecisionTree::Leaf(true), 2).unwrap_err(),
            Error::ConstantTree
        );
    }

    #[test]
    fn goal_is_k_times_d() {
        let f = CdnfFormula::new(3, &[vec![1, 2], vec![-1, 3]], &[vec![1, 3], vec![-1, 2]]).unwrap();
        assert_eq!(cdnf_utility(&f).unwrap().goal(), 4);
    }
}
