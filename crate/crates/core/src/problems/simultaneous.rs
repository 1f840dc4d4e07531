use serde::Serialize;

use crate::assignment::PartialAssignment;
use crate::distribution::{CostVector, ProductDistribution};
use crate::error::{Error, Result};
use crate::formula::ThresholdFormula;
use crate::policies::{run_engine, Engine};
use crate::trace::RunTrace;
use crate::utility::{sum_all, threshold_utility, DynUtility, Sum, ThresholdUtility, Utility, ZeroUtility};

/// Sum of the per-formula threshold utilities, goal `Σ_k Q^(k)`. Constant
/// formulas contribute goal-0 parts.
pub struct SimultaneousThresholds {
    formulas: Vec<ThresholdFormula>,
    sides: Vec<Option<ThresholdUtility>>,
    utility: Sum,
}

/// Claimed guarantees for one system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimultaneousBounds {
    /// `ln Σ_k Q^(k) + 1`
    pub greedy: f64,
    /// `max_k Σ_i |a_ki|`
    pub adg: f64,
    /// `2 (ln(β_max r) + 1)` when every formula is an OR.
    pub or_formulas: Option<f64>,
}

impl SimultaneousThresholds {
    pub fn new(formulas: Vec<ThresholdFormula>) -> Result<Self> {
        let Some(n) = formulas.first().map(|f| f.coeffs().len()) else {
            return Err(Error::InvalidFormula("no formulas".into()));
        };
        let mut sides = Vec::with_capacity(formulas.len());
        let mut parts: Vec<DynUtility> = Vec::with_capacity(formulas.len());
        for f in &formulas {
            if f.coeffs().len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: f.coeffs().len(),
                });
            }
            if f.constant_value().is_some() {
                sides.push(None);
                parts.push(Box::new(ZeroUtility::new(n)));
            } else {
                let g = threshold_utility(f)?;
                parts.push(Box::new(g.clone()));
                sides.push(Some(g));
            }
        }
        let utility = sum_all(n, parts)?;
        Ok(Self {
            formulas,
            sides,
            utility,
        })
    }

    pub fn formulas(&self) -> &[ThresholdFormula] {
        &self.formulas
    }

    pub fn utility(&self) -> &Sum {
        &self.utility
    }

    /// Every formula's value once `b` certifies all of them.
    pub fn decode(&self, b: &PartialAssignment) -> Option<Vec<bool>> {
        self.formulas
            .iter()
            .zip(&self.sides)
            .map(|(f, side)| match side {
                None => f.constant_value(),
                Some(g) => g.decode(b),
            })
            .collect()
    }

    pub fn bounds(&self) -> SimultaneousBounds {
        let q = self.utility.goal();
        let greedy = if q == 0 { 0.0 } else { (q as f64).ln() + 1.0 };
        let adg = self.formulas.iter().map(|f| f.magnitude()).max().unwrap_or(0) as f64;
        let or_formulas = self.formulas.iter().all(|f| f.is_or_formula()).then(|| {
            let beta = self
                .formulas
                .iter()
                .map(|f| f.coeffs().iter().filter(|&&a| a != 0).count())
                .max()
                .unwrap_or(0);
            let n = self.utility.arity();
            let r = (0..n)
                .map(|i| self.formulas.iter().filter(|f| f.coeffs()[i] != 0).count())
                .max()
                .unwrap_or(0);
            2.0 * (((beta * r) as f64).ln() + 1.0)
        });
        SimultaneousBounds {
            greedy,
            adg,
            or_formulas,
        }
    }
}

/// Evaluates every formula on the same hidden input.
pub fn simultaneous_thresholds(
    fs: &[ThresholdFormula],
    d: &ProductDistribution,
    c: &CostVector,
    outcome: impl FnMut(usize) -> bool,
    engine: Engine,
) -> Result<(Vec<bool>, RunTrace)> {
    let sim = SimultaneousThresholds::new(fs.to_vec())?;
    let trace = run_engine(engine, sim.utility(), d, c, outcome)?;
    let b = trace.final_assignment();
    let values = sim.decode(&b).ok_or_else(|| Error::NoProgress {
        assignment: b.to_string(),
    })?;
    Ok((values, trace))
}
