use anyhow::Result;
use rayon::prelude::*;
use sbfe::distribution::{seeded_rng, CostVector, ProductDistribution};
use sbfe::format::{Instance, Problem};
use sbfe::formula::BooleanFunction;
use sbfe::gen::GenSpec;
use sbfe::utility::{cdnf_utility, threshold_utility, truth_table_utility, Utility};
use sbfe::verify::{
    check_axioms, check_dual_feasibility, check_goal_certificate, AxiomMode, DUAL_CHECK_LIMIT, EXHAUSTIVE_AXIOM_LIMIT,
    GOAL_CERTIFICATE_LIMIT,
};
use serde::Serialize;

use crate::config::{EngineChoice, ExperimentConfig};
use crate::eval::measure;

/// Which checks `cmd_verify` runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Axioms,
    Goal,
    Dual,
    Ratio,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyRow {
    pub check: String,
    #[serde(rename = "instance-id")]
    pub instance_id: String,
    pub kind: String,
    pub n: usize,
    pub checks: u64,
    pub detail: String,
    pub pass: bool,
}

/// A utility checked alongside the generated battery.
pub struct Fixture {
    pub id: String,
    pub kind: String,
    pub utility: Box<dyn Utility + Sync>,
    /// When set, the goal-certificate check compares against it.
    pub function: Option<Box<dyn BooleanFunction + Sync>>,
    pub d: ProductDistribution,
    pub c: CostVector,
}

impl Fixture {
    fn from_instance(id: String, inst: &Instance) -> Result<Option<Self>> {
        let (utility, function): (Box<dyn Utility + Sync>, Box<dyn BooleanFunction + Sync>) = match &inst.problem {
            Problem::Cdnf(f) => (Box::new(cdnf_utility(f)?), Box::new(f.clone())),
            Problem::Threshold(f) => (Box::new(threshold_utility(f)?), Box::new(f.clone())),
            Problem::TruthTable(f) => (Box::new(truth_table_utility(f)?), Box::new(f.clone())),
            _ => return Ok(None),
        };
        Ok(Some(Self {
            id,
            kind: inst.kind().to_string(),
            utility,
            function: Some(function),
            d: inst.d.clone(),
            c: inst.c.clone(),
        }))
    }
}

/// Generated battery: `count` instances per Boolean construction with
/// `n` cycling through `1..=max_n`.
pub fn default_battery(seed: u64, count: usize, max_n: usize) -> Result<Vec<(String, Instance)>> {
    let mut rng = seeded_rng(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let n = 1 + i % max_n.max(1);
        let cdnf_n = n.max(2);
        let specs = [
            GenSpec::Threshold { n },
            GenSpec::Cdnf {
                n: cdnf_n,
                k: 1 + i % 3,
                d: 1 + (i / 3) % 3,
            },
            GenSpec::TruthTable { n },
        ];
        for spec in specs {
            out.push((format!("{spec}#{i}"), spec.generate(&mut rng)?));
        }
    }
    Ok(out)
}

fn row(check: &str, f: &Fixture, checks: u64, detail: String, pass: bool) -> VerifyRow {
    VerifyRow {
        check: check.to_string(),
        instance_id: f.id.clone(),
        kind: f.kind.clone(),
        n: f.utility.arity(),
        checks,
        detail,
        pass,
    }
}

fn failed(check: &str, f: &Fixture, e: impl std::fmt::Display) -> VerifyRow {
    row(check, f, 0, format!("error: {e}"), false)
}

fn fixture_rows(f: &Fixture, suite: Suite, trials: usize, seed: u64) -> Vec<VerifyRow> {
    let n = f.utility.arity();
    let mut rows = Vec::new();
    if suite.includes(Suite::Axioms) {
        let mode = if n <= EXHAUSTIVE_AXIOM_LIMIT {
            AxiomMode::Exhaustive
        } else {
            AxiomMode::Random { trials, seed }
        };
        rows.push(match check_axioms(&*f.utility, mode) {
            Ok(r) => {
                let detail = r
                    .violation
                    .as_ref()
                    .map_or_else(|| "ok".to_string(), |v| format!("{v:?}"));
                row("axioms", f, r.checks, detail, r.passed())
            }
            Err(e) => failed("axioms", f, e),
        });
    }
    if suite.includes(Suite::Goal) && n <= GOAL_CERTIFICATE_LIMIT {
        if let Some(func) = &f.function {
            rows.push(match check_goal_certificate(&*f.utility, &**func) {
                Ok(r) => {
                    let detail = r.mismatch.as_ref().map_or_else(
                        || "ok".to_string(),
                        |m| format!("at {}: goal {} but certificate {}", m.b, m.at_goal, m.expected),
                    );
                    row("goal-certificate", f, r.checked, detail, r.passed())
                }
                Err(e) => failed("goal-certificate", f, e),
            });
        }
    }
    if suite.includes(Suite::Dual) && n <= DUAL_CHECK_LIMIT {
        rows.push(match check_dual_feasibility(&*f.utility, &f.d, &f.c) {
            Ok(cert) => {
                let detail = if cert.passed() {
                    format!(
                        "tight error {:.2e}, min slack {:.3e}, objective gap {:.2e}",
                        cert.max_tight_error(),
                        cert.min_slack(),
                        cert.objective_gap()
                    )
                } else if let Some(v) = cert.violations().next() {
                    format!("constraint w={} j={} slack {:.3e}", v.w, v.j, v.slack)
                } else if let Some((w, j)) = &cert.neighbor_violation {
                    format!("neighbor property fails at w={w} j={j}")
                } else {
                    format!("objective gap {:.3e}", cert.objective_gap())
                };
                row("dual", f, cert.constraints.len() as u64, detail, cert.passed())
            }
            Err(e) => failed("dual", f, e),
        });
    }
    rows
}

/// Runs the selected suites over the generated battery (or the configured
/// files) plus any injected fixtures. Row order is deterministic.
pub fn cmd_verify(config: &ExperimentConfig, suite: Suite, fixtures: &[Fixture]) -> Result<Vec<VerifyRow>> {
    config.validate()?;
    let instances = crate::eval::load_instances(config)?;
    let seed = config.seed.unwrap_or_default();
    let mut generated = Vec::new();
    for (id, inst) in &instances {
        if let Some(f) = Fixture::from_instance(id.clone(), inst)? {
            generated.push(f);
        }
    }
    let all: Vec<&Fixture> = generated.iter().chain(fixtures).collect();
    let mut rows: Vec<VerifyRow> = all
        .par_iter()
        .map(|f| fixture_rows(f, suite, config.trials, seed))
        .flatten()
        .collect();
    if suite.includes(Suite::Ratio) {
        let work: Vec<(&String, &Instance, EngineChoice)> = instances
            .iter()
            .flat_map(|(id, inst)| config.engines.iter().map(move |&e| (id, inst, e)))
            .collect();
        let ratio_rows: Vec<VerifyRow> = work
            .par_iter()
            .map(|&(id, inst, engine)| {
                let check = format!("ratio:{engine}");
                match measure(id, inst, engine, config.limits) {
                    Ok(r) => VerifyRow {
                        check,
                        instance_id: r.instance_id,
                        kind: r.kind,
                        n: r.n,
                        checks: 1,
                        detail: match (r.opt, r.ratio) {
                            (Some(opt), Some(ratio)) => format!(
                                "cost {:.6} opt {opt:.6} ratio {ratio:.4} bound {:.4}",
                                r.expected_cost, r.bound
                            ),
                            _ => format!("cost {:.6}, optimum out of reach", r.expected_cost),
                        },
                        pass: r.pass.unwrap_or(true),
                    },
                    Err(e) => VerifyRow {
                        check,
                        instance_id: id.clone(),
                        kind: inst.kind().to_string(),
                        n: inst.arity(),
                        checks: 0,
                        detail: format!("error: {e}"),
                        pass: false,
                    },
                }
            })
            .collect();
        rows.extend(ratio_rows);
    }
    Ok(rows)
}
