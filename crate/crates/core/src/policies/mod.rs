//! Adaptive policies over utility functions and fixed-order baselines.

mod adg;
pub mod alpha;
mod baseline;
mod bounds;
mod greedy;

pub use adg::{adaptive_dual_greedy, AdaptiveDualGreedy};
pub use alpha::alpha_of_trace;
pub use baseline::{cost_order_policy, cp_ratio_policy, FixedOrderPolicy, Sense, Stop};
pub use bounds::{bounds, BoundReport};
pub use greedy::{adaptive_greedy, AdaptiveGreedy};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::assignment::PartialAssignment;
use crate::distribution::{CostVector, ProductDistribution};
use crate::error::{Error, Result};
use crate::policy::Policy;
use crate::trace::RunTrace;
use crate::utility::Utility;

fn check_arities(n: usize, d: &ProductDistribution, c: &CostVector) -> Result<()> {
    if d.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: d.len(),
        });
    }
    if c.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: c.len(),
        });
    }
    Ok(())
}

/// Which utility-driven policy to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Greedy,
    Adg,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Greedy => "greedy",
            Engine::Adg => "adg",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Engine::Greedy),
            "adg" => Ok(Engine::Adg),
            other => Err(Error::Parse {
                line: None,
                message: format!("unknown engine `{other}`"),
            }),
        }
    }
}

/// Either engine as a [`Policy`].
pub enum EnginePolicy<'a, U: ?Sized> {
    Greedy(AdaptiveGreedy<'a, U>),
    Adg(AdaptiveDualGreedy<'a, U>),
}

impl<U: ?Sized> Clone for EnginePolicy<'_, U> {
    fn clone(&self) -> Self {
        match self {
            EnginePolicy::Greedy(p) => EnginePolicy::Greedy(p.clone()),
            EnginePolicy::Adg(p) => EnginePolicy::Adg(p.clone()),
        }
    }
}

impl<'a, U: Utility + ?Sized> EnginePolicy<'a, U> {
    pub fn new(engine: Engine, g: &'a U, d: &'a ProductDistribution, c: &'a CostVector) -> Result<Self> {
        Ok(match engine {
            Engine::Greedy => EnginePolicy::Greedy(AdaptiveGreedy::new(g, d, c)?),
            Engine::Adg => EnginePolicy::Adg(AdaptiveDualGreedy::new(g, d, c)?),
        })
    }
}

impl<U: Utility + ?Sized> Policy for EnginePolicy<'_, U> {
    fn next_test(&mut self, b: &PartialAssignment) -> Result<Option<usize>> {
        match self {
            EnginePolicy::Greedy(p) => p.next_test(b),
            EnginePolicy::Adg(p) => p.next_test(b),
        }
    }
}

/// Runs `engine` on one input.
pub fn run_engine<U: Utility + ?Sized>(
    engine: Engine,
    g: &U,
    d: &ProductDistribution,
    c: &CostVector,
    outcome: impl FnMut(usize) -> bool,
) -> Result<RunTrace> {
    match engine {
        Engine::Greedy => adaptive_greedy(g, d, c, outcome),
        Engine::Adg => adaptive_dual_greedy(g, d, c, outcome),
    }
}
