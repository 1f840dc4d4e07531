//! Seeded instance generators.
//!
//! Specs are written `kind:key=value,...`, for example `threshold:n=6` or
//! `cdnf:n=8,k=3,d=2`. Every generator draws from one [`SeededRng`]:
//! probabilities uniform in `[0.1, 0.9]`, costs uniform in `{1,...,5}`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::assignment::MAX_VARS;
use crate::distribution::{seeded_rng, CostVector, ProductDistribution, SeededRng};
use crate::error::{Error, Result};
use crate::format::{Instance, Kind, Problem};
use crate::formula::{CdnfFormula, LinearSystem, ThresholdFormula, TruthTable, TRUTH_TABLE_LIMIT};
use crate::tree::DecisionTree;
use crate::utility::decision_tree_to_cdnf;

/// Largest coefficient magnitude drawn for thresholds and linear functions.
pub const COEFF_RANGE: i64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenSpec {
    /// Coefficients in `[-5, 5] \ {0}`, `θ` making the formula non-constant.
    Threshold { n: usize },
    /// From a random decision tree with `k` 0-leaves and `d` 1-leaves.
    Cdnf { n: usize, k: usize, d: usize },
    /// `x_1 ∨ ... ∨ x_n`.
    Disjunction { n: usize },
    /// Uniform non-constant table.
    TruthTable { n: usize },
    /// `m` threshold formulas.
    Thresholds { n: usize, m: usize },
    /// `m` linear functions with coefficients in `[-5, 5]`; the last `dups`
    /// copy earlier ones.
    Ranking { n: usize, m: usize, dups: usize },
    /// Values in `{0,...,10}`, `θ` in `[1, Σ a_i]`.
    Knapsack { n: usize },
}

fn field_error(spec: &str, bad: &[String]) -> Error {
    Error::Parse {
        line: None,
        message: format!("invalid generator spec `{spec}`: {}", bad.join("; ")),
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let known: &[&str] = match kind {
            "threshold" | "disjunction" | "truth-table" | "knapsack" => &["n"],
            "cdnf" => &["n", "k", "d"],
            "thresholds" => &["n", "m"],
            "ranking" => &["n", "m", "dups"],
            other => {
                return Err(field_error(
                    spec,
                    &[format!(
                        "unknown kind `{other}` (expected threshold, cdnf, disjunction, truth-table, thresholds, ranking or knapsack)"
                    )],
                ))
            }
        };
        let mut values = [None; 3];
        let mut bad = Vec::new();
        for part in rest.split(',').filter(|s| !s.is_empty()) {
            let Some((key, value)) = part.split_once('=') else {
                bad.push(format!("`{part}` is not key=value"));
                continue;
            };
            let Some(slot) = known.iter().position(|k| *k == key.trim()) else {
                bad.push(format!("unknown field `{}`", key.trim()));
                continue;
            };
            match value.trim().parse::<usize>() {
                Ok(v) if values[slot].is_none() => values[slot] = Some(v),
                Ok(_) => bad.push(format!("field `{key}` given twice")),
                Err(_) => bad.push(format!("field `{key}`: `{value}` is not a nonnegative integer")),
            }
        }
        let get = |i: usize, default: Option<usize>, bad: &mut Vec<String>| {
            values[i].or(default).unwrap_or_else(|| {
                bad.push(format!("missing field `{}`", known[i]));
                0
            })
        };
        let n = get(0, None, &mut bad);
        let parsed = match kind {
            "threshold" => GenSpec::Threshold { n },
            "disjunction" => GenSpec::Disjunction { n },
            "truth-table" => GenSpec::TruthTable { n },
            "knapsack" => GenSpec::Knapsack { n },
            "cdnf" => GenSpec::Cdnf {
                n,
                k: get(1, None, &mut bad),
                d: get(2, None, &mut bad),
            },
            "thresholds" => GenSpec::Thresholds {
                n,
                m: get(1, None, &mut bad),
            },
            _ => GenSpec::Ranking {
                n,
                m: get(1, None, &mut bad),
                dups: get(2, Some(0), &mut bad),
            },
        };
        if bad.is_empty() {
            bad = parsed.problems();
        }
        if bad.is_empty() {
            Ok(parsed)
        } else {
            Err(field_error(spec, &bad))
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenSpec::Threshold { n } => write!(f, "threshold:n={n}"),
            GenSpec::Cdnf { n, k, d } => write!(f, "cdnf:n={n},k={k},d={d}"),
            GenSpec::Disjunction { n } => write!(f, "disjunction:n={n}"),
            GenSpec::TruthTable { n } => write!(f, "truth-table:n={n}"),
            GenSpec::Thresholds { n, m } => write!(f, "thresholds:n={n},m={m}"),
            GenSpec::Ranking { n, m, dups } => write!(f, "ranking:n={n},m={m},dups={dups}"),
            GenSpec::Knapsack { n } => write!(f, "knapsack:n={n}"),
        }
    }
}

impl GenSpec {
    pub fn arity(&self) -> usize {
        match *self {
            GenSpec::Threshold { n }
            | GenSpec::Cdnf { n, .. }
            | GenSpec::Disjunction { n }
            | GenSpec::TruthTable { n }
            | GenSpec::Thresholds { n, .. }
            | GenSpec::Ranking { n, .. }
            | GenSpec::Knapsack { n } => n,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            GenSpec::Threshold { .. } => Kind::Threshold,
            GenSpec::Cdnf { .. } | GenSpec::Disjunction { .. } => Kind::Cdnf,
            GenSpec::TruthTable { .. } => Kind::TruthTable,
            GenSpec::Thresholds { .. } => Kind::Thresholds,
            GenSpec::Ranking { .. } => Kind::Ranking,
            GenSpec::Knapsack { .. } => Kind::Knapsack,
        }
    }

    /// Field-level problems with the spec, empty when valid.
    fn problems(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let n = self.arity();
        if n == 0 || n > MAX_VARS {
            bad.push(format!("n = {n} outside 1..={MAX_VARS}"));
        }
        match *self {
            GenSpec::Cdnf { n, k, d } => {
                if k == 0 || d == 0 {
                    bad.push("k and d must be at least 1".into());
                }
                if n < 64 && (k + d) as u128 > 1u128 << n {
                    bad.push(format!("k + d = {} leaves do not fit a tree over {n} variables", k + d));
                }
            }
            GenSpec::TruthTable { n } if n > TRUTH_TABLE_LIMIT => {
                bad.push(format!("n = {n} above the truth-table limit {TRUTH_TABLE_LIMIT}"));
            }
            GenSpec::Thresholds { m: 0, .. } => bad.push("m must be at least 1".into()),
            GenSpec::Ranking { m, dups, .. } => {
                if m < 2 {
                    bad.push("m must be at least 2".into());
                }
                if dups >= m.max(1) {
                    bad.push(format!("dups = {dups} must be below m = {m}"));
                }
            }
            _ => {}
        }
        bad
    }

    /// Draws one instance.
    pub fn generate(&self, rng: &mut SeededRng) -> Result<Instance> {
        let bad = self.problems();
        if !bad.is_empty() {
            return Err(field_error(&self.to_string(), &bad));
        }
        let n = self.arity();
        let problem = match *self {
            GenSpec::Threshold { n } => Problem::Threshold(random_threshold(n, rng)?),
            GenSpec::Cdnf { n, k, d } => Problem::Cdnf(random_cdnf(n, k, d, rng)?),
            GenSpec::Disjunction { n } => Problem::Cdnf(CdnfFormula::disjunction(n)?),
            GenSpec::TruthTable { n } => Problem::TruthTable(random_table(n, rng)?),
            GenSpec::Thresholds { n, m } => {
                Problem::Thresholds((0..m).map(|_| random_threshold(n, rng)).collect::<Result<_>>()?)
            }
            GenSpec::Ranking { n, m, dups } => Problem::Ranking(random_system(n, m, dups, rng)?),
            GenSpec::Knapsack { n } => {
                let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=10)).collect();
                let total: u64 = values.iter().sum();
                let threshold = if total == 0 { 0 } else { rng.gen_range(1..=total) as i64 };
                Problem::Knapsack { values, threshold }
            }
        };
        let d = if self.kind() == Kind::Knapsack {
            ProductDistribution::sssc(vec![1.0; n])?
        } else {
            random_probs(n, rng)?
        };
        let c = random_costs(n, rng)?;
        Ok(Instance { problem, d, c })
    }
}

/// One instance from `seed`.
pub fn generate(spec: &GenSpec, seed: u64) -> Result<Instance> {
    spec.generate(&mut seeded_rng(seed))
}

/// `count` instances drawn in sequence from one generator seeded with `seed`.
pub fn battery(spec: &GenSpec, count: usize, seed: u64) -> Result<Vec<Instance>> {
    let mut rng = seeded_rng(seed);
    (0..count).map(|_| spec.generate(&mut rng)).collect()
}

pub fn random_probs(n: usize, rng: &mut SeededRng) -> Result<ProductDistribution> {
    ProductDistribution::sbfe((0..n).map(|_| rng.gen_range(0.1..=0.9)).collect())
}

pub fn random_costs(n: usize, rng: &mut SeededRng) -> Result<CostVector> {
    CostVector::new((0..n).map(|_| rng.gen_range(1..=5) as f64).collect())
}

fn nonzero_coeff(rng: &mut SeededRng) -> i64 {
    let v = rng.gen_range(1..=COEFF_RANGE);
    if rng.gen() {
        v
    } else {
        -v
    }
}

pub fn random_threshold(n: usize, rng: &mut SeededRng) -> Result<ThresholdFormula> {
    let coeffs: Vec<i64> = (0..n).map(|_| nonzero_coeff(rng)).collect();
    let neg: i64 = coeffs.iter().filter(|&&a| a < 0).sum();
    let pos: i64 = coeffs.iter().filter(|&&a| a > 0).sum();
    // θ in (Σ neg, Σ pos] keeps R_min < 0 <= R_max
    let theta = rng.gen_range(neg + 1..=pos.max(neg + 1));
    ThresholdFormula::new(coeffs, theta)
}

fn random_tree(avail: &mut Vec<usize>, zeros: usize, ones: usize, rng: &mut SeededRng) -> DecisionTree<bool> {
    let total = zeros + ones;
    if total == 1 {
        return DecisionTree::Leaf(ones == 1);
    }
    let var = avail.swap_remove(rng.gen_range(0..avail.len()));
    let cap = if avail.len() >= 63 {
        usize::MAX
    } else {
        1usize << avail.len()
    };
    let left_total = rng.gen_range(total.saturating_sub(cap).max(1)..=(total - 1).min(cap));
    let left_zeros = rng.gen_range(left_total.saturating_sub(ones)..=zeros.min(left_total));
    let left_ones = left_total - left_zeros;
    let mut right_avail = avail.clone();
    let zero = random_tree(avail, left_zeros, left_ones, rng);
    let one = random_tree(&mut right_avail, zeros - left_zeros, ones - left_ones, rng);
    DecisionTree::test(var, zero, one)
}

/// CDNF with exactly `k` clauses and `d` terms, read off a random decision
/// tree.
pub fn random_cdnf(n: usize, k: usize, d: usize, rng: &mut SeededRng) -> Result<CdnfFormula> {
    if k == 0 || d == 0 || (n < 63 && k + d > 1 << n) {
        return Err(Error::InvalidFormula(format!(
            "no decision tree on {n} variables has {k} 0-leaves and {d} 1-leaves"
        )));
    }
    let mut avail: Vec<usize> = (0..n).collect();
    let tree = random_tree(&mut avail, k, d, rng);
    decision_tree_to_cdnf(&tree, n)
}

pub fn random_table(n: usize, rng: &mut SeededRng) -> Result<TruthTable> {
    let mut table: Vec<bool> = (0..1usize << n).map(|_| rng.gen()).collect();
    if table.iter().all(|&v| v == table[0]) {
        let k = rng.gen_range(0..table.len());
        table[k] = !table[k];
        if table.len() == 1 {
            return Err(Error::InvalidFormula("no non-constant table on 0 variables".into()));
        }
    }
    TruthTable::new(n, table)
}

pub fn random_system(n: usize, m: usize, dups: usize, rng: &mut SeededRng) -> Result<LinearSystem> {
    let mut rows: Vec<Vec<i64>> = (0..m - dups)
        .map(|_| (0..n).map(|_| rng.gen_range(-COEFF_RANGE..=COEFF_RANGE)).collect())
        .collect();
    for _ in 0..dups {
        let copy = rows[..m - dups].choose(rng).expect("m > dups").clone();
        rows.push(copy);
    }
    rows.shuffle(rng);
    LinearSystem::new(n, rows)
}
