//! Self-describing instance files (`format = "sbfe-1"`, TOML).
//!
//! ```toml
//! format = "sbfe-1"
//! kind = "threshold"
//! n = 3
//! coefficients = [2, -1, 3]
//! theta = 2
//! p = [0.5, 0.25, 0.75]
//! c = [1.0, 2.0, 1.0]
//! ```
//!
//! Other kinds use `clauses`/`terms` (signed 1-based literals), `table`
//! (a string of `0`/`1`, entry `k` holding `f` at the input whose bit `i`
//! is `x_{i+1}`), `functions` (one coefficient row per function), `thetas`
//! and `values`. Knapsack files omit `p`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distribution::{CostVector, ProductDistribution};
use crate::error::{Error, Result};
use crate::formula::{CdnfFormula, LinearSystem, ThresholdFormula, TruthTable};
use crate::problems::KnapsackInstance;

pub const FORMAT_VERSION: &str = "sbfe-1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cdnf,
    #[default]
    Threshold,
    #[serde(rename = "truth-table")]
    TruthTable,
    Thresholds,
    Ranking,
    Knapsack,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Cdnf => "cdnf",
            Kind::Threshold => "threshold",
            Kind::TruthTable => "truth-table",
            Kind::Thresholds => "thresholds",
            Kind::Ranking => "ranking",
            Kind::Knapsack => "knapsack",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Problem {
    Cdnf(CdnfFormula),
    Threshold(ThresholdFormula),
    TruthTable(TruthTable),
    Thresholds(Vec<ThresholdFormula>),
    Ranking(LinearSystem),
    Knapsack { values: Vec<u64>, threshold: i64 },
}

impl Problem {
    pub fn kind(&self) -> Kind {
        match self {
            Problem::Cdnf(_) => Kind::Cdnf,
            Problem::Threshold(_) => Kind::Threshold,
            Problem::TruthTable(_) => Kind::TruthTable,
            Problem::Thresholds(_) => Kind::Thresholds,
            Problem::Ranking(_) => Kind::Ranking,
            Problem::Knapsack { .. } => Kind::Knapsack,
        }
    }
}

/// A problem with its test distribution and costs. Knapsack instances carry
/// the all-ones distribution and use `c` as item weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub problem: Problem,
    pub d: ProductDistribution,
    pub c: CostVector,
}

impl Instance {
    pub fn arity(&self) -> usize {
        self.c.len()
    }

    pub fn kind(&self) -> Kind {
        self.problem.kind()
    }

    pub fn knapsack(&self) -> Option<KnapsackInstance> {
        match &self.problem {
            Problem::Knapsack { values, threshold } => Some(KnapsackInstance {
                values: values.clone(),
                weights: self.c.as_slice().to_vec(),
                threshold: *threshold,
            }),
            _ => None,
        }
    }

    /// TOML text in the `sbfe-1` layout.
    pub fn to_toml(&self) -> String {
        let mut raw = RawInstance {
            format: FORMAT_VERSION.to_string(),
            kind: self.kind(),
            n: self.arity(),
            ..RawInstance::default()
        };
        match &self.problem {
            Problem::Cdnf(f) => {
                raw.clauses = Some(f.clauses().iter().map(|s| s.literals()).collect());
                raw.terms = Some(f.terms().iter().map(|s| s.literals()).collect());
            }
            Problem::Threshold(f) => {
                raw.coefficients = Some(f.coeffs().to_vec());
                raw.theta = Some(f.theta());
            }
            Problem::TruthTable(t) => {
                raw.table = Some(t.entries().iter().map(|&v| if v { '1' } else { '0' }).collect());
            }
            Problem::Thresholds(fs) => {
                raw.functions = Some(fs.iter().map(|f| f.coeffs().to_vec()).collect());
                raw.thetas = Some(fs.iter().map(|f| f.theta()).collect());
            }
            Problem::Ranking(sys) => {
                raw.functions = Some(sys.functions().iter().map(|f| f.coeffs().to_vec()).collect());
            }
            Problem::Knapsack { values, threshold } => {
                raw.values = Some(values.clone());
                raw.theta = Some(*threshold);
            }
        }
        if self.kind() != Kind::Knapsack {
            raw.p = Some(self.d.probs().to_vec());
        }
        raw.c = self.c.as_slice().to_vec();
        toml::to_string(&raw).expect("instance serializes")
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    format: String,
    kind: Kind,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    thetas: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clauses: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    functions: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<Vec<f64>>,
    c: Vec<f64>,
}

/// 1-based line of the first line assigning `key`, if any.
fn line_of(text: &str, key: &str) -> Option<usize> {
    text.lines()
        .position(|l| {
            l.trim_start()
                .strip_prefix(key)
                .is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map(|i| i + 1)
}

fn line_at(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, key: &str, message: impl Into<String>) -> Error {
        Error::Parse {
            line: line_of(self.text, key),
            message: message.into(),
        }
    }

    fn wrap<T>(&self, key: &str, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => self.err(key, format!("{key}: {other}")),
        })
    }

    fn need<T>(&self, key: &str, v: Option<T>) -> Result<T> {
        v.ok_or_else(|| Error::Parse {
            line: None,
            message: format!("missing field `{key}`"),
        })
    }

    fn forbid<T>(&self, key: &str, v: &Option<T>, kind: Kind) -> Result<()> {
        match v {
            Some(_) => Err(self.err(key, format!("field `{key}` does not apply to kind `{kind}`"))),
            None => Ok(()),
        }
    }

    fn arity<T>(&self, key: &str, v: &[T], n: usize) -> Result<()> {
        if v.len() != n {
            return Err(self.err(key, format!("`{key}` has {} entries, expected n = {n}", v.len())));
        }
        Ok(())
    }
}

/// Parses and validates an instance file. Errors carry the line of the
/// offending field when it can be located.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = toml::from_str(text).map_err(|e| Error::Parse {
        line: e.span().map(|s| line_at(text, s.start)),
        message: e.message().to_string(),
    })?;
    let cx = Ctx { text };
    if raw.format != FORMAT_VERSION {
        return Err(cx.err(
            "format",
            format!("unsupported format `{}`, expected `{FORMAT_VERSION}`", raw.format),
        ));
    }
    let n = raw.n;
    let kind = raw.kind;
    let allowed: &[&str] = match kind {
        Kind::Cdnf => &["clauses", "terms"],
        Kind::Threshold => &["coefficients", "theta"],
        Kind::TruthTable => &["table"],
        Kind::Thresholds => &["functions", "thetas"],
        Kind::Ranking => &["functions"],
        Kind::Knapsack => &["values", "theta"],
    };
    let present = [
        ("coefficients", raw.coefficients.is_some()),
        ("theta", raw.theta.is_some()),
        ("thetas", raw.thetas.is_some()),
        ("clauses", raw.clauses.is_some()),
        ("terms", raw.terms.is_some()),
        ("table", raw.table.is_some()),
        ("functions", raw.functions.is_some()),
        ("values", raw.values.is_some()),
    ];
    for (key, is_set) in present {
        if is_set && !allowed.contains(&key) {
            cx.forbid(key, &Some(()), kind)?;
        }
    }

    cx.arity("c", &raw.c, n)?;
    let c = cx.wrap("c", CostVector::new(raw.c.clone()))?;
    let d = if kind == Kind::Knapsack {
        cx.forbid("p", &raw.p, kind)?;
        cx.wrap("n", ProductDistribution::sssc(vec![1.0; n]))?
    } else {
        let p = cx.need("p", raw.p)?;
        cx.arity("p", &p, n)?;
        cx.wrap("p", ProductDistribution::sbfe(p))?
    };

    let problem = match kind {
        Kind::Cdnf => {
            let clauses = raw.clauses.unwrap_or_default();
            let terms = raw.terms.unwrap_or_default();
            Problem::Cdnf(cx.wrap("clauses", CdnfFormula::new(n, &clauses, &terms))?)
        }
        Kind::Threshold => {
            let coeffs = cx.need("coefficients", raw.coefficients)?;
            cx.arity("coefficients", &coeffs, n)?;
            let theta = cx.need("theta", raw.theta)?;
            Problem::Threshold(cx.wrap("coefficients", ThresholdFormula::new(coeffs, theta))?)
        }
        Kind::TruthTable => {
            let table = cx.need("table", raw.table)?;
            let bits = table
                .chars()
                .map(|ch| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(cx.err("table", format!("unexpected character `{other}` in table"))),
                })
                .collect::<Result<Vec<bool>>>()?;
            Problem::TruthTable(cx.wrap("table", TruthTable::new(n, bits))?)
        }
        Kind::Thresholds => {
            let rows = cx.need("functions", raw.functions)?;
            let thetas = cx.need("thetas", raw.thetas)?;
            if rows.is_empty() || rows.len() != thetas.len() {
                return Err(cx.err(
                    "thetas",
                    format!("{} functions but {} thetas", rows.len(), thetas.len()),
                ));
            }
            let mut fs = Vec::with_capacity(rows.len());
            for (row, theta) in rows.into_iter().zip(thetas) {
                cx.arity("functions", &row, n)?;
                fs.push(cx.wrap("functions", ThresholdFormula::new(row, theta))?);
            }
            Problem::Thresholds(fs)
        }
        Kind::Ranking => {
            let rows = cx.need("functions", raw.functions)?;
            if rows.len() < 2 {
                return Err(cx.err("functions", "ranking needs at least 2 functions"));
            }
            Problem::Ranking(cx.wrap("functions", LinearSystem::new(n, rows))?)
        }
        Kind::Knapsack => {
            let values = cx.need("values", raw.values)?;
            cx.arity("values", &values, n)?;
            let threshold = cx.need("theta", raw.theta)?;
            let total: i128 = values.iter().map(|&v| v as i128).sum();
            if total < threshold as i128 {
                return Err(cx.err("theta", Error::InfeasibleKnapsack { total, threshold }.to_string()));
            }
            if values.iter().any(|&v| v > i64::MAX as u64) {
                return Err(cx.err("values", "item value exceeds 2^63 - 1"));
            }
            Problem::Knapsack { values, threshold }
        }
    };
    Ok(Instance { problem, d, c })
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_instance(s)
    }
}
