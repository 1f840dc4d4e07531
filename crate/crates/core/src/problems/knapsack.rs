use serde::{Deserialize, Serialize};

use crate::assignment::SubmaskIter;
use crate::distribution::{CostVector, ProductDistribution};
use crate::error::{Error, Result};
use crate::formula::ThresholdFormula;
use crate::oracle::OracleLimits;
use crate::policies::adaptive_dual_greedy;
use crate::utility::threshold_utility;

/// Choose items of least total weight whose values reach `threshold`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnapsackInstance {
    pub values: Vec<u64>,
    pub weights: Vec<f64>,
    pub threshold: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnapsackSolution {
    pub items: Vec<usize>,
    pub cost: f64,
}

impl KnapsackInstance {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check(&self) -> Result<CostVector> {
        if self.values.len() != self.weights.len() {
            return Err(Error::ArityMismatch {
                expected: self.values.len(),
                found: self.weights.len(),
            });
        }
        let total: i128 = self.values.iter().map(|&a| a as i128).sum();
        if total < self.threshold as i128 {
            return Err(Error::InfeasibleKnapsack {
                total,
                threshold: self.threshold,
            });
        }
        CostVector::new(self.weights.clone())
    }

    fn value_of(&self, mask: u64) -> i128 {
        crate::assignment::BitIter(mask).map(|i| self.values[i] as i128).sum()
    }
}

/// ADG on `Σ a_i x_i >= θ` with every test answering 1.
pub fn min_knapsack_adg(kp: &KnapsackInstance) -> Result<KnapsackSolution> {
    let c = kp.check()?;
    if kp.threshold <= 0 {
        return Ok(KnapsackSolution {
            items: Vec::new(),
            cost: 0.0,
        });
    }
    let coeffs = kp
        .values
        .iter()
        .enumerate()
        .map(|(i, &a)| i64::try_from(a).map_err(|_| Error::InvalidFormula(format!("value of item {i} too large"))))
        .collect::<Result<Vec<_>>>()?;
    let g = threshold_utility(&ThresholdFormula::new(coeffs, kp.threshold)?)?;
    let d = ProductDistribution::sssc(vec![1.0; kp.len()])?;
    let trace = adaptive_dual_greedy(&g, &d, &c, |_| true)?;
    let mut items = trace.tested.clone();
    items.sort_unstable();
    Ok(KnapsackSolution {
        items,
        cost: trace.total_cost,
    })
}

/// Exact optimum by subset enumeration.
pub fn knapsack_optimum(kp: &KnapsackInstance, limits: OracleLimits) -> Result<KnapsackSolution> {
    let c = kp.check()?;
    limits.check_enumeration(kp.len())?;
    let all = if kp.len() == 64 {
        u64::MAX
    } else {
        (1u64 << kp.len()) - 1
    };
    let mut best: Option<(f64, u64)> = None;
    for mask in SubmaskIter::new(all) {
        if kp.value_of(mask) < kp.threshold as i128 {
            continue;
        }
        let cost: f64 = crate::assignment::BitIter(mask).map(|i| c.get(i)).sum();
        if best.is_none_or(|(b, _)| cost < b) {
            best = Some((cost, mask));
        }
    }
    let (cost, mask) = best.expect("feasibility checked");
    Ok(KnapsackSolution {
        items: crate::assignment::BitIter(mask).collect(),
        cost,
    })
}
