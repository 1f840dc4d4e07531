use serde::Serialize;

use crate::assignment::PartialAssignment;
use crate::error::Result;
use crate::utility::{marginal, Utility};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub goal: u64,
    /// Largest single-test gain from the all-star assignment.
    pub p_value: u64,
    /// `ln Q + 1`
    pub ln_q_bound: f64,
    /// `2 (ln P + 1)`
    pub p_bound: f64,
    pub alpha_observed: Option<f64>,
}

impl BoundReport {
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha_observed = Some(alpha);
        self
    }
}

/// Greedy guarantees for `g`. A zero goal yields zero bounds.
pub fn bounds<U: Utility + ?Sized>(g: &U) -> Result<BoundReport> {
    let q = g.goal();
    let root = PartialAssignment::stars(g.arity());
    let mut p = 0;
    for j in 0..g.arity() {
        p = p.max(marginal(g, &root, j, false)?).max(marginal(g, &root, j, true)?);
    }
    let (ln_q_bound, p_bound) = if q == 0 {
        (0.0, 0.0)
    } else {
        ((q as f64).ln() + 1.0, 2.0 * ((p as f64).ln() + 1.0))
    };
    Ok(BoundReport {
        goal: q,
        p_value: p,
        ln_q_bound,
        p_bound,
        alpha_observed: None,
    })
}
