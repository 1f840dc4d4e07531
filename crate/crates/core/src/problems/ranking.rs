use serde::Serialize;

use crate::assignment::PartialAssignment;
use crate::distribution::{CostVector, ProductDistribution};
use crate::error::{Error, Result};
use crate::formula::LinearSystem;
use crate::policies::adaptive_greedy;
use crate::trace::RunTrace;
use crate::utility::{ranking_pair_utility, RankingPairUtility, Utility};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankingResult {
    /// Function indices in nondecreasing order of value.
    pub permutation: Vec<usize>,
    /// Consecutive groups of `permutation`; a group with several members
    /// is a collapsed tie.
    pub equality_classes: Vec<Vec<usize>>,
}

/// Sum of all pair utilities of a linear system.
pub struct RankingUtility {
    m: usize,
    n: usize,
    pairs: Vec<RankingPairUtility>,
    goal: u64,
}

impl RankingUtility {
    pub fn num_functions(&self) -> usize {
        self.m
    }

    pub fn pairs(&self) -> &[RankingPairUtility] {
        &self.pairs
    }

    fn pair(&self, i: usize, j: usize) -> &RankingPairUtility {
        // pairs are stored row-major over i < j
        let (i, j) = (i.min(j), i.max(j));
        &self.pairs[i * (2 * self.m - i - 1) / 2 + (j - i - 1)]
    }

    /// `f_i <= f_j` on every completion of `b`.
    pub fn known_le(&self, b: &PartialAssignment, i: usize, j: usize) -> bool {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => true,
            std::cmp::Ordering::Less => self.pair(i, j).known_le(b),
            std::cmp::Ordering::Greater => self.pair(j, i).known_ge(b),
        }
    }
}

impl Utility for RankingUtility {
    fn arity(&self) -> usize {
        self.n
    }
    fn goal(&self) -> u64 {
        self.goal
    }
    fn value(&self, b: &PartialAssignment) -> u64 {
        self.pairs.iter().map(|g| g.value(b)).sum()
    }
}

pub fn ranking_utility(sys: &LinearSystem) -> Result<RankingUtility> {
    let m = sys.len();
    if m < 2 {
        return Err(Error::InvalidFormula(format!(
            "ranking needs at least 2 functions, got {m}"
        )));
    }
    let mut pairs = Vec::with_capacity(m * (m - 1) / 2);
    let mut goal: u128 = 0;
    for i in 0..m {
        for j in i + 1..m {
            let g = ranking_pair_utility(sys, i, j)?;
            goal += g.goal() as u128;
            pairs.push(g);
        }
    }
    let goal = crate::utility::checked_goal(goal)?;
    Ok(RankingUtility {
        m,
        n: sys.arity(),
        pairs,
        goal,
    })
}

/// Reads an ordering off a partial assignment at which every pair is
/// decided. The smallest group known to be at most every other remaining
/// group is emitted first; when none exists a cycle of known `<=` relations
/// is collapsed into one group.
pub fn extract_ranking(g: &RankingUtility, b: &PartialAssignment) -> Result<RankingResult> {
    let m = g.num_functions();
    let le = |x: &[usize], y: &[usize]| x.iter().any(|&i| y.iter().any(|&j| g.known_le(b, i, j)));
    let mut groups: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
    let mut out = Vec::new();
    while !groups.is_empty() {
        let minimal = (0..groups.len()).find(|&x| (0..groups.len()).all(|y| le(&groups[x], &groups[y])));
        if let Some(x) = minimal {
            out.push(groups.remove(x));
            continue;
        }
        // Every group has some group known strictly below it; follow those
        // edges until a group repeats.
        let mut walk = vec![0usize];
        let cycle_start = loop {
            let x = *walk.last().unwrap();
            let Some(y) = (0..groups.len()).find(|&y| !le(&groups[x], &groups[y])) else {
                unreachable!("group {x} is minimal");
            };
            if !le(&groups[y], &groups[x]) {
                return Err(Error::NoProgress {
                    assignment: b.to_string(),
                });
            }
            if let Some(pos) = walk.iter().position(|&z| z == y) {
                break pos;
            }
            walk.push(y);
        };
        let mut cycle: Vec<usize> = walk[cycle_start..].to_vec();
        cycle.sort_unstable();
        let mut merged: Vec<usize> = cycle.iter().flat_map(|&x| groups[x].iter().copied()).collect();
        merged.sort_unstable();
        for &x in cycle.iter().rev() {
            groups.remove(x);
        }
        let at = groups.partition_point(|grp| grp[0] < merged[0]);
        groups.insert(at, merged);
    }
    Ok(RankingResult {
        permutation: out.iter().flatten().copied().collect(),
        equality_classes: out,
    })
}

/// Adaptive Greedy on the sum of all pair utilities, then extraction.
pub fn rank_linear_functions(
    sys: &LinearSystem,
    d: &ProductDistribution,
    c: &CostVector,
    outcome: impl FnMut(usize) -> bool,
) -> Result<(RankingResult, RunTrace)> {
    let g = ranking_utility(sys)?;
    let trace = adaptive_greedy(&g, d, c, outcome)?;
    let ranking = extract_ranking(&g, &trace.final_assignment())?;
    Ok((ranking, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::oracle_from;

    fn unit(n: usize) -> (ProductDistribution, CostVector) {
        (ProductDistribution::uniform(n).unwrap(), CostVector::unit(n).unwrap())
    }

    #[test]
    fn two_variables() {
        let sys = LinearSystem::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let (d, c) = unit(2);
        let (r, _) = rank_linear_functions(&sys, &d, &c, oracle_from("10".parse().unwrap())).unwrap();
        assert_eq!(r.permutation, vec![1, 0]);
    }

    #[test]
    fn identical_functions_form_one_class() {
        let sys = LinearSystem::new(2, vec![vec![1, -2], vec![1, -2]]).unwrap();
        let (d, c) = unit(2);
        let (r, t) = rank_linear_functions(&sys, &d, &c, |_| unreachable!()).unwrap();
        assert!(t.is_empty());
        assert_eq!(r.permutation, vec![0, 1]);
        assert_eq!(r.equality_classes.iter().map(Vec::len).sum::<usize>(), 2);
    }

    #[test]
    fn consistent_with_values_everywhere() {
        let sys = LinearSystem::new(3, vec![vec![1, -1, 2], vec![0, 1, 1], vec![1, -1, 2], vec![2, 0, -1]]).unwrap();
        let d = ProductDistribution::sbfe(vec![0.2, 0.5, 0.7]).unwrap();
        let c = CostVector::new(vec![1.0, 2.0, 1.0]).unwrap();
        for x in PartialAssignment::all_full(3) {
            let (r, _) = rank_linear_functions(&sys, &d, &c, oracle_from(x)).unwrap();
            let vals: Vec<i128> = r.permutation.iter().map(|&j| sys.value(j, &x)).collect();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{x}: {vals:?}");
        }
    }

    #[test]
    fn pair_index_layout() {
        let sys = LinearSystem::new(1, vec![vec![1], vec![2], vec![3], vec![4]]).unwrap();
        let g = ranking_utility(&sys).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                assert_eq!(g.pair(i, j).pair(), (i, j));
            }
        }
    }
}
