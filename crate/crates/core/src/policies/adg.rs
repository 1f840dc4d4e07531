//! Adaptive Dual Greedy.
//!
//! Each step picks the untested `j` minimizing the reduced cost ratio
//!
//! ```text
//! (c_j - Σ_{S: y_S ≠ 0} E[g_{S,b}(j)] y_S) / E[g_b(j)]
//! ```
//!
//! and sets `y_{F}` (for the current tested prefix `F`) to that minimum.
//! Only prefixes of the realized test sequence ever receive duals, so they
//! are stored by prefix length.

use crate::assignment::PartialAssignment;
use crate::distribution::{CostVector, ProductDistribution, EPS};
use crate::error::{Error, Result};
use crate::policy::{self, Policy};
use crate::trace::RunTrace;
use crate::utility::{expected_gain, expected_set_gain, Utility};

pub struct AdaptiveDualGreedy<'a, U: ?Sized> {
    g: &'a U,
    d: &'a ProductDistribution,
    c: &'a CostVector,
    order: Vec<usize>,
    // duals[l] = y for the prefix of length l
    duals: Vec<f64>,
}

impl<U: ?Sized> Clone for AdaptiveDualGreedy<'_, U> {
    fn clone(&self) -> Self {
        Self {
            g: self.g,
            d: self.d,
            c: self.c,
            order: self.order.clone(),
            duals: self.duals.clone(),
        }
    }
}

impl<'a, U: Utility + ?Sized> AdaptiveDualGreedy<'a, U> {
    pub fn new(g: &'a U, d: &'a ProductDistribution, c: &'a CostVector) -> Result<Self> {
        super::check_arities(g.arity(), d, c)?;
        Ok(Self {
            g,
            d,
            c,
            order: Vec::new(),
            duals: Vec::new(),
        })
    }

    /// Items tested so far, in order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `y_S` per prefix length.
    pub fn duals(&self) -> &[f64] {
        &self.duals
    }

    fn prefix_mask(&self, len: usize) -> u64 {
        self.order[..len].iter().fold(0, |m, &j| m | 1 << j)
    }

    /// `c_j - Σ_S E[g_{S,b}(j)] y_S` over the prefixes with nonzero dual.
    pub fn reduced_cost(&self, b: &PartialAssignment, j: usize) -> Result<f64> {
        let mut credit = 0.0;
        for (len, &y) in self.duals.iter().enumerate() {
            if y != 0.0 {
                credit += expected_set_gain(self.g, b, self.prefix_mask(len), j, self.d)? * y;
            }
        }
        Ok(self.c.get(j) - credit)
    }

    /// The pick and its ratio, without updating state.
    pub fn select(&self, b: &PartialAssignment) -> Result<Option<(usize, f64)>> {
        if self.g.at_goal(b) {
            return Ok(None);
        }
        let mut best: Option<(usize, f64)> = None;
        for j in b.untested() {
            let gain = expected_gain(self.g, b, j, self.d)?;
            if gain <= 0.0 {
                continue;
            }
            let reduced = self.reduced_cost(b, j)?;
            if reduced < -EPS {
                return Err(Error::DualInfeasible {
                    index: j,
                    reduced_cost: reduced,
                });
            }
            let ratio = reduced.max(0.0) / gain;
            if best.is_none_or(|(_, r)| ratio < r - EPS) {
                best = Some((j, ratio));
            }
        }
        match best {
            Some(pick) => Ok(Some(pick)),
            None => Err(Error::NoProgress {
                assignment: b.to_string(),
            }),
        }
    }
}

impl<U: Utility + ?Sized> Policy for AdaptiveDualGreedy<'_, U> {
    fn next_test(&mut self, b: &PartialAssignment) -> Result<Option<usize>> {
        debug_assert_eq!(b.num_tested(), self.order.len());
        let pick = self.select(b)?;
        if let Some((j, ratio)) = pick {
            self.duals.push(ratio);
            self.order.push(j);
        }
        Ok(pick.map(|(j, _)| j))
    }
}

/// Runs ADG on one input and records every nonzero `y_S` in the trace.
pub fn adaptive_dual_greedy<U: Utility + ?Sized>(
    g: &U,
    d: &ProductDistribution,
    c: &CostVector,
    outcome: impl FnMut(usize) -> bool,
) -> Result<RunTrace> {
    let mut policy = AdaptiveDualGreedy::new(g, d, c)?;
    let mut trace = policy::run(&mut policy, g.arity(), c, outcome)?;
    trace.dual_values = policy
        .duals()
        .iter()
        .enumerate()
        .filter(|(_, &y)| y != 0.0)
        .map(|(len, &y)| (len, y))
        .collect();
    trace.alpha_samples = super::alpha::alpha_samples(g, &trace)?;
    Ok(trace)
}
