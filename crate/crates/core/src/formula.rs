//! Boolean function representations and certificate checks.

use crate::assignment::{PartialAssignment, MAX_VARS};
use crate::error::{Error, Result};

/// CNF/DNF agreement is checked exhaustively up to this arity.
pub const CDNF_CHECK_LIMIT: usize = 12;

/// Largest truth table accepted (`2^20` entries).
pub const TRUTH_TABLE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    None,
    Zero,
    One,
}

impl Certificate {
    pub fn value(self) -> Option<bool> {
        match self {
            Certificate::None => None,
            Certificate::Zero => Some(false),
            Certificate::One => Some(true),
        }
    }

    pub fn is_some(self) -> bool {
        self != Certificate::None
    }
}

pub trait BooleanFunction {
    fn arity(&self) -> usize;

    /// Value on a full assignment.
    fn evaluate(&self, x: &PartialAssignment) -> bool;

    /// Whether `b` forces the function to a constant. The default scans
    /// every completion of `b`.
    fn certificate(&self, b: &PartialAssignment) -> Certificate {
        exhaustive_certificate(self, b)
    }
}

pub fn exhaustive_certificate<F: BooleanFunction + ?Sized>(f: &F, b: &PartialAssignment) -> Certificate {
    let mut seen = [false; 2];
    for a in b.completions() {
        seen[f.evaluate(&a) as usize] = true;
        if seen[0] && seen[1] {
            return Certificate::None;
        }
    }
    match seen {
        [true, false] => Certificate::Zero,
        [false, true] => Certificate::One,
        _ => Certificate::None,
    }
}

/// Certificate check for any Boolean function.
pub fn certificate_check<F: BooleanFunction + ?Sized>(f: &F, b: &PartialAssignment) -> Certificate {
    f.certificate(b)
}

fn check_arity(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::BadArity { n, limit: MAX_VARS });
    }
    Ok(())
}

/// A set of literals stored as positive/negative occurrence masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LiteralSet {
    pos: u64,
    neg: u64,
}

impl LiteralSet {
    /// Parses signed 1-based literals (`+i` for `x_i`, `-i` for `¬x_i`).
    pub fn from_literals(n: usize, lits: &[i64]) -> Result<Self> {
        if lits.is_empty() {
            return Err(Error::InvalidFormula("empty literal set".into()));
        }
        let mut set = LiteralSet { pos: 0, neg: 0 };
        for &lit in lits {
            let var = lit.unsigned_abs() as usize;
            if lit == 0 || var > n {
                return Err(Error::InvalidFormula(format!(
                    "literal {lit} out of range for {n} variables"
                )));
            }
            let bit = 1u64 << (var - 1);
            if lit > 0 {
                set.pos |= bit;
            } else {
                set.neg |= bit;
            }
        }
        if set.pos & set.neg != 0 {
            return Err(Error::InvalidFormula(format!(
                "literal set {lits:?} contains a variable and its negation"
            )));
        }
        Ok(set)
    }

    /// Signed 1-based literals in increasing variable order.
    pub fn literals(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for i in 0..64 {
            if self.pos >> i & 1 == 1 {
                out.push(i as i64 + 1);
            } else if self.neg >> i & 1 == 1 {
                out.push(-(i as i64 + 1));
            }
        }
        out
    }

    /// Some literal is made true by `b`.
    pub fn has_true_literal(&self, b: &PartialAssignment) -> bool {
        let ones = b.known_mask() & b.value_mask();
        let zeros = b.known_mask() & !b.value_mask();
        (ones & self.pos) | (zeros & self.neg) != 0
    }

    /// Some literal is made false by `b`.
    pub fn has_false_literal(&self, b: &PartialAssignment) -> bool {
        let ones = b.known_mask() & b.value_mask();
        let zeros = b.known_mask() & !b.value_mask();
        (zeros & self.pos) | (ones & self.neg) != 0
    }

    pub fn variables(&self) -> u64 {
        self.pos | self.neg
    }
}

/// A function given both as a CNF (`clauses`) and a DNF (`terms`).
#[derive(Clone, Debug, PartialEq)]
pub struct CdnfFormula {
    n: usize,
    clauses: Vec<LiteralSet>,
    terms: Vec<LiteralSet>,
}

impl CdnfFormula {
    /// Validates literals and, for `n <= CDNF_CHECK_LIMIT`, that the CNF and
    /// DNF agree everywhere. Above the limit agreement is the caller's
    /// obligation.
    pub fn new(n: usize, clauses: &[Vec<i64>], terms: &[Vec<i64>]) -> Result<Self> {
        check_arity(n)?;
        if clauses.is_empty() && terms.is_empty() {
            return Err(Error::InvalidFormula(
                "a CNF with no clauses is true, a DNF with no terms is false".into(),
            ));
        }
        let parse = |sets: &[Vec<i64>]| -> Result<Vec<LiteralSet>> {
            sets.iter().map(|s| LiteralSet::from_literals(n, s)).collect()
        };
        let f = Self {
            n,
            clauses: parse(clauses)?,
            terms: parse(terms)?,
        };
        if n <= CDNF_CHECK_LIMIT {
            if let Some(x) = PartialAssignment::all_full(n).find(|x| f.cnf_value(x) != f.dnf_value(x)) {
                return Err(Error::InvalidFormula(format!("CNF and DNF disagree on input {x}")));
            }
        }
        Ok(f)
    }

    /// `x_1 ∨ ... ∨ x_n`: one clause and `n` unit terms.
    pub fn disjunction(n: usize) -> Result<Self> {
        let all: Vec<i64> = (1..=n as i64).collect();
        let units: Vec<Vec<i64>> = all.iter().map(|&i| vec![i]).collect();
        Self::new(n, &[all], &units)
    }

    /// `x_1 ∧ ... ∧ x_n`: `n` unit clauses and one term.
    pub fn conjunction(n: usize) -> Result<Self> {
        let all: Vec<i64> = (1..=n as i64).collect();
        let units: Vec<Vec<i64>> = all.iter().map(|&i| vec![i]).collect();
        Self::new(n, &units, &[all])
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn clauses(&self) -> &[LiteralSet] {
        &self.clauses
    }

    pub fn terms(&self) -> &[LiteralSet] {
        &self.terms
    }

    /// `Some(value)` when one side is empty, making the function constant.
    pub fn constant_value(&self) -> Option<bool> {
        if self.clauses.is_empty() {
            Some(true)
        } else if self.terms.is_empty() {
            Some(false)
        } else {
            None
        }
    }

    pub fn satisfied_clauses(&self, b: &PartialAssignment) -> usize {
        self.clauses.iter().filter(|c| c.has_true_literal(b)).count()
    }

    pub fn falsified_terms(&self, b: &PartialAssignment) -> usize {
        self.terms.iter().filter(|t| t.has_false_literal(b)).count()
    }

    fn cnf_value(&self, x: &PartialAssignment) -> bool {
        self.satisfied_clauses(x) == self.clauses.len()
    }

    fn dnf_value(&self, x: &PartialAssignment) -> bool {
        self.falsified_terms(x) < self.terms.len()
    }

    /// True when the formula is `x_1 ∨ ... ∨ x_m` over some variables.
    pub fn as_disjunction(&self) -> Option<u64> {
        if self.clauses.len() != 1 || self.clauses[0].neg != 0 {
            return None;
        }
        let vars = self.clauses[0].pos;
        let units = self.terms.iter().all(|t| t.neg == 0 && t.pos.count_ones() == 1);
        let covered = self.terms.iter().fold(0, |acc, t| acc | t.pos);
        (units && covered == vars && self.terms.len() == vars.count_ones() as usize).then_some(vars)
    }

    /// True when the formula is `x_1 ∧ ... ∧ x_m` over some variables.
    pub fn as_conjunction(&self) -> Option<u64> {
        if self.terms.len() != 1 || self.terms[0].neg != 0 {
            return None;
        }
        let vars = self.terms[0].pos;
        let units = self.clauses.iter().all(|c| c.neg == 0 && c.pos.count_ones() == 1);
        let covered = self.clauses.iter().fold(0, |acc, c| acc | c.pos);
        (units && covered == vars && self.clauses.len() == vars.count_ones() as usize).then_some(vars)
    }
}

impl BooleanFunction for CdnfFormula {
    fn arity(&self) -> usize {
        self.n
    }

    fn evaluate(&self, x: &PartialAssignment) -> bool {
        self.dnf_value(x)
    }

    /// A 0-certificate falsifies every term; a 1-certificate satisfies every
    /// clause. Exact because no literal set holds complementary literals.
    fn certificate(&self, b: &PartialAssignment) -> Certificate {
        if self.satisfied_clauses(b) == self.clauses.len() {
            Certificate::One
        } else if self.falsified_terms(b) == self.terms.len() {
            Certificate::Zero
        } else {
            Certificate::None
        }
    }
}

/// An integer linear form `Σ a_i x_i + offset`, with range queries over the
/// completions of a partial assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<i64>,
    offset: i64,
}

impl LinearForm {
    /// Requires `Σ|a_i| + |offset|` to fit in an `i64`.
    pub fn new(coeffs: Vec<i64>, offset: i64) -> Result<Self> {
        check_arity(coeffs.len())?;
        let mass: i128 = coeffs.iter().map(|&a| (a as i128).abs()).sum::<i128>() + (offset as i128).abs();
        if mass > i64::MAX as i128 {
            return Err(Error::InvalidFormula(
                "coefficient magnitudes overflow a 64-bit integer".into(),
            ));
        }
        Ok(Self { coeffs, offset })
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// `Σ |a_i|`.
    pub fn magnitude(&self) -> i128 {
        self.coeffs.iter().map(|&a| (a as i128).abs()).sum()
    }

    fn fixed_part(&self, b: &PartialAssignment) -> i128 {
        let ones = b.known_mask() & b.value_mask();
        crate::assignment::BitIter(ones)
            .map(|i| self.coeffs[i] as i128)
            .sum::<i128>()
            + self.offset as i128
    }

    /// Minimum over all completions of `b`.
    pub fn min(&self, b: &PartialAssignment) -> i128 {
        self.fixed_part(b) + b.untested().map(|i| (self.coeffs[i] as i128).min(0)).sum::<i128>()
    }

    /// Maximum over all completions of `b`.
    pub fn max(&self, b: &PartialAssignment) -> i128 {
        self.fixed_part(b) + b.untested().map(|i| (self.coeffs[i] as i128).max(0)).sum::<i128>()
    }

    /// Value on a full assignment.
    pub fn value(&self, x: &PartialAssignment) -> i128 {
        self.fixed_part(x)
    }
}

/// `Σ a_i x_i >= θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdFormula {
    coeffs: Vec<i64>,
    theta: i64,
    form: LinearForm,
}

impl ThresholdFormula {
    pub fn new(coeffs: Vec<i64>, theta: i64) -> Result<Self> {
        let offset = theta
            .checked_neg()
            .ok_or_else(|| Error::InvalidFormula("threshold out of range".into()))?;
        let form = LinearForm::new(coeffs.clone(), offset)?;
        Ok(Self { coeffs, theta, form })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn theta(&self) -> i64 {
        self.theta
    }

    /// `h(x) = Σ a_i x_i - θ`.
    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    /// `D = Σ |a_i|`.
    pub fn magnitude(&self) -> i128 {
        self.form.magnitude()
    }

    pub fn r_min(&self) -> i128 {
        self.form.min(&PartialAssignment::stars(self.arity()))
    }

    pub fn r_max(&self) -> i128 {
        self.form.max(&PartialAssignment::stars(self.arity()))
    }

    pub fn constant_value(&self) -> Option<bool> {
        if self.r_min() >= 0 {
            Some(true)
        } else if self.r_max() < 0 {
            Some(false)
        } else {
            None
        }
    }

    /// True for `x_i1 + ... + x_im >= 1` (coefficients in {0, 1}).
    pub fn is_or_formula(&self) -> bool {
        self.theta == 1 && self.coeffs.iter().all(|&a| a == 0 || a == 1) && self.coeffs.contains(&1)
    }
}

impl BooleanFunction for ThresholdFormula {
    fn arity(&self) -> usize {
        self.coeffs.len()
    }

    fn evaluate(&self, x: &PartialAssignment) -> bool {
        self.form.value(x) >= 0
    }

    fn certificate(&self, b: &PartialAssignment) -> Certificate {
        if self.form.min(b) >= 0 {
            Certificate::One
        } else if self.form.max(b) < 0 {
            Certificate::Zero
        } else {
            Certificate::None
        }
    }
}

/// Explicit truth table. Entry `k` is `f(x)` where bit `i` of `k` is `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    table: Vec<bool>,
}

impl TruthTable {
    pub fn new(n: usize, table: Vec<bool>) -> Result<Self> {
        if n == 0 || n > TRUTH_TABLE_LIMIT {
            return Err(Error::LimitExceeded {
                what: "truth table",
                n,
                limit: TRUTH_TABLE_LIMIT,
            });
        }
        if table.len() != 1 << n {
            return Err(Error::InvalidFormula(format!(
                "truth table over {n} variables needs {} entries, got {}",
                1usize << n,
                table.len()
            )));
        }
        Ok(Self { n, table })
    }

    pub fn from_fn<F: BooleanFunction + ?Sized>(f: &F) -> Result<Self> {
        let n = f.arity();
        if n > TRUTH_TABLE_LIMIT {
            return Err(Error::LimitExceeded {
                what: "truth table",
                n,
                limit: TRUTH_TABLE_LIMIT,
            });
        }
        let table = PartialAssignment::all_full(n).map(|x| f.evaluate(&x)).collect();
        Self::new(n, table)
    }

    pub fn entries(&self) -> &[bool] {
        &self.table
    }

    pub fn count(&self, value: bool) -> u64 {
        self.table.iter().filter(|&&v| v == value).count() as u64
    }

    /// Number of completions of `b` on which the function equals `value`.
    pub fn count_consistent(&self, b: &PartialAssignment, value: bool) -> u64 {
        b.completions()
            .filter(|a| self.table[a.value_mask() as usize] == value)
            .count() as u64
    }
}

impl BooleanFunction for TruthTable {
    fn arity(&self) -> usize {
        self.n
    }

    fn evaluate(&self, x: &PartialAssignment) -> bool {
        self.table[x.value_mask() as usize]
    }
}

/// `m` integer linear functions over the same variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    n: usize,
    functions: Vec<LinearForm>,
}

impl LinearSystem {
    pub fn new(n: usize, functions: Vec<Vec<i64>>) -> Result<Self> {
        check_arity(n)?;
        if functions.is_empty() {
            return Err(Error::InvalidFormula(
                "a linear system needs at least one function".into(),
            ));
        }
        let forms = functions
            .into_iter()
            .map(|coeffs| {
                if coeffs.len() != n {
                    return Err(Error::ArityMismatch {
                        expected: n,
                        found: coeffs.len(),
                    });
                }
                LinearForm::new(coeffs, 0)
            })
            .collect::<Result<Vec<_>>>()?;
        // pairwise differences must stay representable
        let max_mass = forms.iter().map(|f| f.magnitude()).max().unwrap_or(0);
        if 2 * max_mass > i64::MAX as i128 {
            return Err(Error::InvalidFormula(
                "coefficient magnitudes overflow pairwise differences".into(),
            ));
        }
        Ok(Self { n, functions: forms })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn function(&self, j: usize) -> &LinearForm {
        &self.functions[j]
    }

    pub fn functions(&self) -> &[LinearForm] {
        &self.functions
    }

    /// `f_i - f_j` as a linear form.
    pub fn difference(&self, i: usize, j: usize) -> LinearForm {
        let coeffs = self.functions[i]
            .coeffs()
            .iter()
            .zip(self.functions[j].coeffs())
            .map(|(a, b)| a - b)
            .collect();
        LinearForm::new(coeffs, 0).expect("difference magnitude checked at construction")
    }

    /// Value of `f_j` on a full assignment.
    pub fn value(&self, j: usize, x: &PartialAssignment) -> i128 {
        self.functions[j].value(x)
    }

    pub fn d_max(&self) -> i128 {
        self.functions.iter().map(|f| f.magnitude()).max().unwrap_or(0)
    }

    pub fn d_avg(&self) -> f64 {
        self.functions.iter().map(|f| f.magnitude() as f64).sum::<f64>() / self.len() as f64
    }
}
