//! Explicit decision trees (strategies).

use crate::assignment::PartialAssignment;
use crate::distribution::{CostVector, ProductDistribution};

#[derive(Clone, Debug, PartialEq)]
pub enum DecisionTree<L> {
    Leaf(L),
    Test {
        var: usize,
        zero: Box<DecisionTree<L>>,
        one: Box<DecisionTree<L>>,
    },
}

impl<L> DecisionTree<L> {
    pub fn test(var: usize, zero: DecisionTree<L>, one: DecisionTree<L>) -> Self {
        DecisionTree::Test {
            var,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, DecisionTree::Leaf(_))
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Test { zero, one, .. } => zero.num_leaves() + one.num_leaves(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Test { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    /// Leaf reached on full assignment `x`.
    pub fn evaluate(&self, x: &PartialAssignment) -> &L {
        let mut node = self;
        loop {
            match node {
                DecisionTree::Leaf(l) => return l,
                DecisionTree::Test { var, zero, one } => {
                    node = if x.get(*var) == Some(true) { one } else { zero };
                }
            }
        }
    }

    /// Indices tested on input `x`, in order (`C(x)`).
    pub fn path(&self, x: &PartialAssignment) -> Vec<usize> {
        let mut out = Vec::new();
        let mut node = self;
        while let DecisionTree::Test { var, zero, one } = node {
            out.push(*var);
            node = if x.get(*var) == Some(true) { one } else { zero };
        }
        out
    }

    /// Exact expected testing cost under `d`.
    pub fn expected_cost(&self, d: &ProductDistribution, c: &CostVector) -> f64 {
        match self {
            DecisionTree::Leaf(_) => 0.0,
            DecisionTree::Test { var, zero, one } => {
                let p = d.p(*var);
                let v1 = if p > 0.0 { one.expected_cost(d, c) } else { 0.0 };
                let v0 = if p < 1.0 { zero.expected_cost(d, c) } else { 0.0 };
                c.get(*var) + p * v1 + (1.0 - p) * v0
            }
        }
    }

    /// Every root-to-leaf path paired with the partial assignment it records.
    pub fn paths(&self, n: usize) -> Vec<(PartialAssignment, &L)> {
        let mut out = Vec::new();
        self.collect_paths(PartialAssignment::stars(n), &mut out);
        out
    }

    fn collect_paths<'a>(&'a self, b: PartialAssignment, out: &mut Vec<(PartialAssignment, &'a L)>) {
        match self {
            DecisionTree::Leaf(l) => out.push((b, l)),
            DecisionTree::Test { var, zero, one } => {
                zero.collect_paths(b.with(*var, false), out);
                one.collect_paths(b.with(*var, true), out);
            }
        }
    }

    /// No index repeats on any root-to-leaf path.
    pub fn has_no_repeats(&self) -> bool {
        fn walk<L>(t: &DecisionTree<L>, seen: u64) -> bool {
            match t {
                DecisionTree::Leaf(_) => true,
                DecisionTree::Test { var, zero, one } => {
                    let bit = 1u64 << var;
                    seen & bit == 0 && walk(zero, seen | bit) && walk(one, seen | bit)
                }
            }
        }
        walk(self, 0)
    }

    /// Checks that inputs differing only in bit `j` either both test `j` or
    /// neither does. Returns the first offending `(x, j)`.
    pub fn neighbor_violation(&self, n: usize) -> Option<(PartialAssignment, usize)> {
        for x in PartialAssignment::all_full(n) {
            let tested = self.path(&x).iter().fold(0u64, |m, &j| m | 1 << j);
            for j in 0..n {
                let y = x.with(j, x.get(j) != Some(true));
                let tested_y = self.path(&y).iter().fold(0u64, |m, &k| m | 1 << k);
                if (tested >> j & 1) != (tested_y >> j & 1) {
                    return Some((x, j));
                }
            }
        }
        None
    }

    pub fn map_leaves<M>(self, f: &mut impl FnMut(L) -> M) -> DecisionTree<M> {
        match self {
            DecisionTree::Leaf(l) => DecisionTree::Leaf(f(l)),
            DecisionTree::Test { var, zero, one } => {
                let zero = zero.map_leaves(f);
                let one = one.map_leaves(f);
                DecisionTree::test(var, zero, one)
            }
        }
    }
}
