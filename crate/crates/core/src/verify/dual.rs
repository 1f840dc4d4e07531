//! Dual feasibility of the values ADG assigns, assembled over every input.
//!
//! Running ADG on each `a ∈ {0,1}^n` yields `Y_{S,a}` for the prefixes `S`
//! of `C(a)`. For each `w` with a single untested position `j`, with
//! completions `w0` and `w1`,
//!
//! ```text
//! h'_w = Σ_S (1 - p_j) g_{S,w0}(j) Y_{S,w0} + Σ_S p_j g_{S,w1}(j) Y_{S,w1}
//! ```
//!
//! must equal `c_j` when ADG tests `j` on `w1` and stay at most `c_j`
//! otherwise.

use rayon::prelude::*;
use serde::Serialize;

use crate::assignment::PartialAssignment;
use crate::distribution::{CostVector, ProductDistribution, EPS};
use crate::error::{Error, Result};
use crate::policies::adaptive_dual_greedy;
use crate::policy::oracle_from;
use crate::trace::RunTrace;
use crate::utility::{set_marginal, Utility};

/// Largest arity for the `2^n` ADG runs.
pub const DUAL_CHECK_LIMIT: usize = 12;

/// Tolerance for the objective identity.
pub const OBJECTIVE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualConstraint {
    pub w: String,
    pub j: usize,
    /// Whether ADG tests `j` on the completions of `w`.
    pub tested: bool,
    pub h: f64,
    /// `c_j - h'_w`
    pub slack: f64,
}

impl DualConstraint {
    pub fn holds(&self) -> bool {
        if self.tested {
            self.slack.abs() <= EPS
        } else {
            self.slack >= -EPS
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualCertificate {
    pub n: usize,
    /// `Y_{S,a}` by input (as a bit mask) and prefix length.
    pub y_values: Vec<(u64, Vec<(usize, f64)>)>,
    pub constraints: Vec<DualConstraint>,
    /// First `(w, j)` where ADG tests `j` on exactly one of `w0`, `w1`.
    pub neighbor_violation: Option<(String, usize)>,
    /// `Σ_a p(a) Σ_{j ∈ C(a)} c_j`
    pub primal_objective: f64,
    /// `Σ_a Σ_S Σ_{j ∈ C(a)} p(a) g_{S,a}(j) Y_{S,a}`
    pub dual_objective: f64,
}

impl DualCertificate {
    pub fn negative_duals(&self) -> usize {
        self.y_values
            .iter()
            .flat_map(|(_, ys)| ys)
            .filter(|(_, y)| *y < 0.0)
            .count()
    }

    pub fn violations(&self) -> impl Iterator<Item = &DualConstraint> {
        self.constraints.iter().filter(|c| !c.holds())
    }

    /// Largest `|slack|` over constraints that must be tight.
    pub fn max_tight_error(&self) -> f64 {
        self.constraints
            .iter()
            .filter(|c| c.tested)
            .map(|c| c.slack.abs())
            .fold(0.0, f64::max)
    }

    /// Smallest slack over all constraints.
    pub fn min_slack(&self) -> f64 {
        self.constraints.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min)
    }

    pub fn objective_gap(&self) -> f64 {
        (self.primal_objective - self.dual_objective).abs()
    }

    pub fn passed(&self) -> bool {
        self.neighbor_violation.is_none()
            && self.negative_duals() == 0
            && self.violations().next().is_none()
            && self.objective_gap() <= OBJECTIVE_TOLERANCE
    }
}

/// `Σ_S g_{S,a}(j) Y_{S,a}` for one run.
fn weighted_marginals<U: Utility + ?Sized>(g: &U, a: &PartialAssignment, trace: &RunTrace, j: usize) -> Result<f64> {
    let mut total = 0.0;
    for &(len, y) in &trace.dual_values {
        total += set_marginal(g, a, trace.prefix_mask(len), j)? as f64 * y;
    }
    Ok(total)
}

pub fn check_dual_feasibility<U>(g: &U, d: &ProductDistribution, c: &CostVector) -> Result<DualCertificate>
where
    U: Utility + Sync + ?Sized,
{
    let n = g.arity();
    if n > DUAL_CHECK_LIMIT {
        return Err(Error::LimitExceeded {
            what: "dual check",
            n,
            limit: DUAL_CHECK_LIMIT,
        });
    }
    // all_full enumerates in increasing mask order, so input k has mask k
    let inputs: Vec<PartialAssignment> = PartialAssignment::all_full(n).collect();
    let traces = inputs
        .par_iter()
        .map(|&a| adaptive_dual_greedy(g, d, c, oracle_from(a)))
        .collect::<Result<Vec<RunTrace>>>()?;
    let tested_mask: Vec<u64> = traces.iter().map(|t| t.prefix_mask(t.len())).collect();

    let mut primal_objective = 0.0;
    let mut dual_objective = 0.0;
    for (a, t) in inputs.iter().zip(&traces) {
        let pa = d.prob_of(a);
        primal_objective += pa * t.total_cost;
        for &j in &t.tested {
            dual_objective += pa * weighted_marginals(g, a, t, j)?;
        }
    }

    let mut constraints = Vec::with_capacity(n << n.saturating_sub(1));
    let mut neighbor_violation = None;
    for (k, a0) in inputs.iter().enumerate() {
        debug_assert_eq!(a0.value_mask(), k as u64);
        for j in 0..n {
            if k >> j & 1 == 1 {
                continue;
            }
            let k1 = k | 1 << j;
            let a1 = &inputs[k1];
            let w = a0.forget(j);
            let tested0 = tested_mask[k] >> j & 1 == 1;
            let tested1 = tested_mask[k1] >> j & 1 == 1;
            if tested0 != tested1 && neighbor_violation.is_none() {
                neighbor_violation = Some((w.to_string(), j));
            }
            let p = d.p(j);
            let h =
                (1.0 - p) * weighted_marginals(g, a0, &traces[k], j)? + p * weighted_marginals(g, a1, &traces[k1], j)?;
            constraints.push(DualConstraint {
                w: w.to_string(),
                j,
                tested: tested1,
                h,
                slack: c.get(j) - h,
            });
        }
    }

    Ok(DualCertificate {
        n,
        y_values: inputs
            .iter()
            .zip(&traces)
            .map(|(a, t)| (a.value_mask(), t.dual_values.clone()))
            .collect(),
        constraints,
        neighbor_violation,
        primal_objective,
        dual_objective,
    })
}
