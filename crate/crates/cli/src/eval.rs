use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use sbfe::distribution::{CostVector, ProductDistribution};
use sbfe::format::{parse_instance, Instance, Problem};
use sbfe::formula::{BooleanFunction, ThresholdFormula};
use sbfe::gen;
use sbfe::oracle::{optimal_expected_cost, optimal_tree, OracleLimits};
use sbfe::policies::{bounds, cost_order_policy, AdaptiveDualGreedy, AdaptiveGreedy, FixedOrderPolicy};
use sbfe::policy::{self, expected_cost};
use sbfe::problems::{knapsack_optimum, min_knapsack_adg, ranking_utility, SimultaneousThresholds};
use sbfe::utility::{cdnf_utility, threshold_utility, truth_table_utility, Utility};
use sbfe::verify::{max_alpha_over_inputs, Measurement};
use serde::Serialize;

use crate::config::{EngineChoice, ExperimentConfig, Source};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalRow {
    #[serde(rename = "instance-id")]
    pub instance_id: String,
    pub kind: String,
    pub n: usize,
    pub engine: EngineChoice,
    pub expected_cost: f64,
    pub opt: Option<f64>,
    pub ratio: Option<f64>,
    pub bound: f64,
    pub alpha: Option<f64>,
    /// Unset when the optimum is out of the oracle's reach.
    pub pass: Option<bool>,
}

/// One engine on one instance.
struct Run {
    cost: f64,
    bound: f64,
    alpha: Option<f64>,
}

pub fn load_instances(config: &ExperimentConfig) -> Result<Vec<(String, Instance)>> {
    match &config.source {
        Source::Files(paths) => paths
            .iter()
            .map(|p| {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                let inst = parse_instance(&text).with_context(|| format!("parsing {}", p.display()))?;
                Ok((p.display().to_string(), inst))
            })
            .collect(),
        Source::Generator { spec, count } => {
            let seed = config.seed.context("a generator source needs --seed")?;
            let battery = gen::battery(spec, *count, seed)?;
            Ok(battery
                .into_iter()
                .enumerate()
                .map(|(i, inst)| (format!("{spec}#{i}"), inst))
                .collect())
        }
        Source::Battery { count } => {
            let seed = config.seed.context("a generated battery needs --seed")?;
            crate::verify::default_battery(seed, *count, config.limits.dp_max_n.min(10))
        }
    }
}

pub fn cmd_eval(config: &ExperimentConfig) -> Result<Vec<EvalRow>> {
    config.validate()?;
    let instances = load_instances(config)?;
    let work: Vec<(&str, &Instance, EngineChoice)> = instances
        .iter()
        .flat_map(|(id, inst)| config.engines.iter().map(move |&e| (id.as_str(), inst, e)))
        .collect();
    work.par_iter()
        .map(|&(id, inst, engine)| measure(id, inst, engine, config.limits))
        .collect()
}

pub fn measure(id: &str, inst: &Instance, engine: EngineChoice, limits: OracleLimits) -> Result<EvalRow> {
    let n = inst.arity();
    limits.check_enumeration(n)?;
    let (run, opt) = match &inst.problem {
        Problem::Cdnf(f) => boolean(cdnf_utility(f), f, inst, engine, None, limits)?,
        Problem::Threshold(f) => boolean(threshold_utility(f), f, inst, engine, Some(3.0), limits)?,
        Problem::TruthTable(f) => boolean(truth_table_utility(f), f, inst, engine, None, limits)?,
        Problem::Thresholds(fs) => {
            let sim = SimultaneousThresholds::new(fs.clone())?;
            let opt = within_dp(n, limits, || {
                Ok(optimal_tree(&inst.d, &inst.c, limits, |b| sim.decode(b))?.0)
            })?;
            let g = sim.utility();
            let baseline = cost_order_policy(&inst.c).until_goal(g);
            let b = sim.bounds();
            (
                drive(g, &inst.d, &inst.c, engine, Some(b.adg), baseline, Some(b.greedy))?,
                opt,
            )
        }
        Problem::Ranking(sys) => {
            let g = ranking_utility(sys)?;
            let opt = within_dp(n, limits, || {
                Ok(optimal_tree(&inst.d, &inst.c, limits, |b| g.at_goal(b).then_some(()))?.0)
            })?;
            let baseline = cost_order_policy(&inst.c).until_goal(&g);
            (drive(&g, &inst.d, &inst.c, engine, None, baseline, None)?, opt)
        }
        Problem::Knapsack { .. } => knapsack(inst, engine, limits)?,
    };
    let m = opt.map(|opt| Measurement {
        expected_cost: run.cost,
        opt,
        bound: run.bound,
        alpha: run.alpha,
    });
    Ok(EvalRow {
        instance_id: id.to_string(),
        kind: inst.kind().to_string(),
        n,
        engine,
        expected_cost: run.cost,
        opt,
        ratio: m.map(|m| m.ratio()),
        bound: run.bound,
        alpha: run.alpha,
        pass: m.map(|m| m.within_bound()),
    })
}

fn within_dp(n: usize, limits: OracleLimits, opt: impl FnOnce() -> Result<f64>) -> Result<Option<f64>> {
    if n > limits.dp_max_n {
        return Ok(None);
    }
    opt().map(Some)
}

fn boolean<U, F>(
    g: sbfe::Result<U>,
    f: &F,
    inst: &Instance,
    engine: EngineChoice,
    adg_bound: Option<f64>,
    limits: OracleLimits,
) -> Result<(Run, Option<f64>)>
where
    U: Utility + Sync,
    F: BooleanFunction + Sync,
{
    let g = match g {
        Ok(g) => g,
        // constant functions need no tests
        Err(sbfe::Error::ConstantFunction { .. }) => {
            return Ok((
                Run {
                    cost: 0.0,
                    bound: 1.0,
                    alpha: None,
                },
                Some(0.0),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let opt = within_dp(inst.arity(), limits, || {
        Ok(optimal_expected_cost(f, &inst.d, &inst.c, limits)?.0)
    })?;
    let baseline = cost_order_policy(&inst.c).until_certified(f);
    Ok((drive(&g, &inst.d, &inst.c, engine, adg_bound, baseline, None)?, opt))
}

/// Runs `engine` with goal utility `g`. Greedy defaults to the `ln Q + 1`
/// bound and ADG to the largest observed alpha.
fn drive<U: Utility + Sync + ?Sized>(
    g: &U,
    d: &ProductDistribution,
    c: &CostVector,
    engine: EngineChoice,
    adg_bound: Option<f64>,
    baseline: FixedOrderPolicy<'_>,
    greedy_bound: Option<f64>,
) -> Result<Run> {
    Ok(match engine {
        EngineChoice::Greedy => Run {
            cost: expected_cost(&AdaptiveGreedy::new(g, d, c)?, d, c)?,
            bound: match greedy_bound {
                Some(b) => b,
                None => bounds(g)?.ln_q_bound,
            },
            alpha: None,
        },
        EngineChoice::Adg => {
            let alpha = max_alpha_over_inputs(g, d, c)?;
            Run {
                cost: expected_cost(&AdaptiveDualGreedy::new(g, d, c)?, d, c)?,
                bound: adg_bound.unwrap_or(alpha),
                alpha: Some(alpha),
            }
        }
        EngineChoice::Baseline => Run {
            cost: expected_cost(&baseline, d, c)?,
            bound: g.arity().max(1) as f64,
            alpha: None,
        },
    })
}

fn knapsack(inst: &Instance, engine: EngineChoice, limits: OracleLimits) -> Result<(Run, Option<f64>)> {
    let kp = inst.knapsack().context("knapsack instance")?;
    let n = kp.len();
    let opt = if n <= limits.enumeration_max_n {
        Some(knapsack_optimum(&kp, limits)?.cost)
    } else {
        None
    };
    if engine == EngineChoice::Adg {
        let sol = min_knapsack_adg(&kp)?;
        return Ok((
            Run {
                cost: sol.cost,
                bound: 2.0,
                alpha: None,
            },
            opt,
        ));
    }
    let coeffs = kp
        .values
        .iter()
        .map(|&a| i64::try_from(a))
        .collect::<Result<Vec<_>, _>>()?;
    let g = match threshold_utility(&ThresholdFormula::new(coeffs, kp.threshold)?) {
        Ok(g) => g,
        Err(sbfe::Error::ConstantFunction { value: true }) => {
            return Ok((
                Run {
                    cost: 0.0,
                    bound: 1.0,
                    alpha: None,
                },
                opt,
            ))
        }
        Err(sbfe::Error::ConstantFunction { value: false }) => {
            bail!("knapsack threshold {} is unreachable", kp.threshold)
        }
        Err(e) => return Err(e.into()),
    };
    let trace = match engine {
        EngineChoice::Greedy => policy::run(&mut AdaptiveGreedy::new(&g, &inst.d, &inst.c)?, n, &inst.c, |_| true)?,
        _ => policy::run(&mut cost_order_policy(&inst.c).until_goal(&g), n, &inst.c, |_| true)?,
    };
    let bound = if engine == EngineChoice::Greedy {
        bounds(&g)?.ln_q_bound
    } else {
        n.max(1) as f64
    };
    Ok((
        Run {
            cost: trace.total_cost,
            bound,
            alpha: None,
        },
        opt,
    ))
}
