//! Executable checks: utility axioms, goal-certificate equivalence, dual
//! feasibility of ADG, and cost ratios against the exact optimum.

mod axioms;
mod dual;
mod goal_certificate;
mod ratio;

pub use axioms::{check_axioms, AxiomMode, AxiomReport, AxiomViolation, EXHAUSTIVE_AXIOM_LIMIT};
pub use dual::{check_dual_feasibility, DualCertificate, DualConstraint, DUAL_CHECK_LIMIT, OBJECTIVE_TOLERANCE};
pub use goal_certificate::{
    check_goal_certificate, check_goal_predicate, GoalCertificateReport, GoalMismatch, GOAL_CERTIFICATE_LIMIT,
};
pub use ratio::{max_alpha_over_inputs, ratio_vs_opt, Measurement, RatioReport, RatioRow, RATIO_TOLERANCE};
