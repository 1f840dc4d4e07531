use serde::Serialize;

use crate::assignment::PartialAssignment;

/// One `(S, ratio)` sample of the α quantity; `S` is the prefix of the
/// tested sequence with `prefix_len` items.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlphaSample {
    pub prefix_len: usize,
    pub ratio: f64,
}

/// Record of one adaptive run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunTrace {
    n: usize,
    /// Tested indices in order (`C(a)`).
    pub tested: Vec<usize>,
    pub outcomes: Vec<bool>,
    /// Nonzero dual values `y_S`, keyed by the length of the prefix `S`.
    pub dual_values: Vec<(usize, f64)>,
    pub alpha_samples: Vec<AlphaSample>,
    pub total_cost: f64,
}

impl RunTrace {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            tested: Vec::new(),
            outcomes: Vec::new(),
            dual_values: Vec::new(),
            alpha_samples: Vec::new(),
            total_cost: 0.0,
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub(crate) fn push(&mut self, j: usize, l: bool, cost: f64) {
        self.tested.push(j);
        self.outcomes.push(l);
        self.total_cost += cost;
    }

    pub fn len(&self) -> usize {
        self.tested.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tested.is_empty()
    }

    /// Outcomes of the first `len` tests as a partial assignment.
    pub fn prefix(&self, len: usize) -> PartialAssignment {
        self.tested[..len]
            .iter()
            .zip(&self.outcomes)
            .fold(PartialAssignment::stars(self.n), |b, (&j, &l)| b.with(j, l))
    }

    /// Final partial assignment (the cover).
    pub fn final_assignment(&self) -> PartialAssignment {
        self.prefix(self.tested.len())
    }

    /// Mask of the first `len` tested indices.
    pub fn prefix_mask(&self, len: usize) -> u64 {
        self.tested[..len].iter().fold(0, |m, &j| m | 1 << j)
    }

    /// `y_S` for the prefix of length `len` (zero when unset).
    pub fn dual(&self, len: usize) -> f64 {
        self.dual_values
            .iter()
            .find(|(l, _)| *l == len)
            .map_or(0.0, |(_, y)| *y)
    }
}
