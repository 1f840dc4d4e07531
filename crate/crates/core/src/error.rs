use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("variable x{} is already tested", .index + 1)]
    AlreadyTested { index: usize },

    #[error("index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("number of variables must be in 1..={limit}, got {n}")]
    BadArity { n: usize, limit: usize },

    #[error("n = {n} exceeds the {what} limit of {limit}")]
    LimitExceeded { what: &'static str, n: usize, limit: usize },

    #[error("invalid probability p{} = {value}", .index + 1)]
    InvalidProbability { index: usize, value: f64 },

    #[error("invalid cost c{} = {value}", .index + 1)]
    InvalidCost { index: usize, value: f64 },

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("function is constant ({})", if *.value { "true" } else { "false" })]
    ConstantFunction { value: bool },

    #[error("goal value overflows 2^63 - 1")]
    GoalOverflow,

    #[error("utility is not monotone at {assignment}: testing x{} = {} loses utility", .index + 1, *.bit as u8)]
    BrokenUtility {
        assignment: String,
        index: usize,
        bit: bool,
    },

    #[error("no untested item has positive expected gain at {assignment} (utility below goal)")]
    NoProgress { assignment: String },

    #[error("dual infeasibility at x{}: reduced cost {reduced_cost}", .index + 1)]
    DualInfeasible { index: usize, reduced_cost: f64 },

    #[error("policy did not terminate within {n} tests at {assignment}")]
    NonTerminating { n: usize, assignment: String },

    #[error("decision tree is constant; no tests are needed")]
    ConstantTree,

    #[error("knapsack instance is infeasible: total value {total} < threshold {threshold}")]
    InfeasibleKnapsack { total: i128, threshold: i64 },

    #[error("{}", match .line { Some(l) => format!("line {l}: {message}"), None => message.clone() })]
    Parse { line: Option<usize>, message: String },
}
