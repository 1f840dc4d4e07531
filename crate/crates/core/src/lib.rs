//! Stochastic Boolean function evaluation through stochastic submodular set
//! cover: utility constructions, adaptive greedy policies, exact oracles and
//! verification harnesses.

pub mod assignment;
pub mod distribution;
pub mod error;
pub mod format;
pub mod formula;
pub mod gen;
pub mod oracle;
pub mod policies;
pub mod policy;
pub mod problems;
pub mod trace;
pub mod tree;
pub mod utility;
pub mod verify;

pub use error::{Error, Result};
