use super::{combine_or, Or, Utility};
use crate::assignment::PartialAssignment;
use crate::error::{Error, Result};
use crate::formula::{BooleanFunction, TruthTable};

/// `Q_v - |{a ∼ b : f(a) = v}|`: how many `v`-inputs `b` has ruled out.
#[derive(Clone, Debug)]
pub struct EliminatedInputs {
    table: TruthTable,
    value: bool,
    goal: u64,
}

impl Utility for EliminatedInputs {
    fn arity(&self) -> usize {
        self.table.arity()
    }
    fn goal(&self) -> u64 {
        self.goal
    }
    fn value(&self, b: &PartialAssignment) -> u64 {
        self.goal - self.table.count_consistent(b, self.value)
    }
}

/// Generic utility for an explicit truth table, goal `Q1 Q0`.
pub type TruthTableUtility = Or<EliminatedInputs, EliminatedInputs>;

/// Fails with [`Error::ConstantFunction`] on a constant table.
pub fn truth_table_utility(f: &TruthTable) -> Result<TruthTableUtility> {
    let zeros = f.count(false);
    let ones = f.count(true);
    if zeros == 0 || ones == 0 {
        return Err(Error::ConstantFunction { value: zeros == 0 });
    }
    let side = |value: bool, goal: u64| EliminatedInputs {
        table: f.clone(),
        value,
        goal,
    };
    combine_or(side(false, zeros), side(true, ones))
}
