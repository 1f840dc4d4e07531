use rayon::prelude::*;
use serde::Serialize;

use crate::assignment::PartialAssignment;
use crate::distribution::{CostVector, ProductDistribution};
use crate::error::Result;
use crate::policies::{adaptive_dual_greedy, alpha_of_trace};
use crate::policy::oracle_from;
use crate::utility::Utility;

/// Absolute slack allowed when comparing a cost against `bound * OPT`.
pub const RATIO_TOLERANCE: f64 = 1e-6;

/// One driver measured against the optimum on one instance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Measurement {
    pub expected_cost: f64,
    pub opt: f64,
    /// Claimed approximation factor.
    pub bound: f64,
    pub alpha: Option<f64>,
}

impl Measurement {
    /// `expected_cost / opt`, with `0 / 0 = 1`.
    pub fn ratio(&self) -> f64 {
        if self.opt > 0.0 {
            self.expected_cost / self.opt
        } else if self.expected_cost <= RATIO_TOLERANCE {
            1.0
        } else {
            f64::INFINITY
        }
    }

    pub fn within_bound(&self) -> bool {
        self.expected_cost <= self.bound * self.opt + RATIO_TOLERANCE
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRow {
    pub instance_id: usize,
    pub expected_cost: f64,
    pub opt: f64,
    pub ratio: f64,
    pub bound: f64,
    pub alpha: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub rows: Vec<RatioRow>,
}

impl RatioReport {
    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }

    pub fn max_alpha(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.alpha).reduce(f64::max)
    }

    pub fn violations(&self) -> impl Iterator<Item = &RatioRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn passed(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Measures `driver` on every battery instance in parallel. Rows keep
/// battery order.
pub fn ratio_vs_opt<I, F>(battery: &[I], driver: F) -> Result<RatioReport>
where
    I: Sync,
    F: Fn(&I) -> Result<Measurement> + Sync,
{
    let rows = battery
        .par_iter()
        .enumerate()
        .map(|(instance_id, inst)| {
            let m = driver(inst)?;
            Ok(RatioRow {
                instance_id,
                expected_cost: m.expected_cost,
                opt: m.opt,
                ratio: m.ratio(),
                bound: m.bound,
                alpha: m.alpha,
                pass: m.within_bound(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatioReport { rows })
}

/// Largest α over ADG runs on every input.
pub fn max_alpha_over_inputs<U>(g: &U, d: &ProductDistribution, c: &CostVector) -> Result<f64>
where
    U: Utility + Sync + ?Sized,
{
    let inputs: Vec<PartialAssignment> = PartialAssignment::all_full(g.arity()).collect();
    let alphas = inputs
        .par_iter()
        .map(|&a| {
            let trace = adaptive_dual_greedy(g, d, c, oracle_from(a))?;
            alpha_of_trace(g, &a, &trace)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(alphas.into_iter().fold(1.0, f64::max))
}
