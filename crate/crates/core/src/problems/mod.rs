//! End-to-end drivers: single-function evaluation, simultaneous evaluation,
//! ranking of linear functions and Min-Knapsack.

mod evaluate;
mod knapsack;
mod ranking;
mod simultaneous;

pub use evaluate::{evaluate_cdnf, evaluate_threshold_adg, evaluate_threshold_q, evaluate_truth_table};
pub use knapsack::{knapsack_optimum, min_knapsack_adg, KnapsackInstance, KnapsackSolution};
pub use ranking::{extract_ranking, rank_linear_functions, ranking_utility, RankingResult, RankingUtility};
pub use simultaneous::{simultaneous_thresholds, SimultaneousBounds, SimultaneousThresholds};
