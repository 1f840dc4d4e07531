use crate::assignment::PartialAssignment;
use crate::error::{Error, Result};
use crate::trace::{AlphaSample, RunTrace};
use crate::utility::{set_marginal, set_value, Utility};

/// One sample per prefix `S` of `C(a)` with `Q - g(S, a) > 0`:
/// `Σ_{j ∈ C(a)} g_{S,a}(j) / (Q - g(S, a))`.
///
/// Only the bits of `a` on `C(a)` enter the formula, so the trace's own
/// outcomes stand in for `a`.
pub fn alpha_samples<U: Utility + ?Sized>(g: &U, trace: &RunTrace) -> Result<Vec<AlphaSample>> {
    let a = trace.final_assignment();
    let q = g.goal();
    let mut samples = Vec::new();
    for len in 0..=trace.len() {
        let set = trace.prefix_mask(len);
        let residual = q.saturating_sub(set_value(g, &a, set));
        if residual == 0 {
            continue;
        }
        let mut mass: u128 = 0;
        for &j in &trace.tested {
            mass += set_marginal(g, &a, set, j)? as u128;
        }
        samples.push(AlphaSample {
            prefix_len: len,
            ratio: mass as f64 / residual as f64,
        });
    }
    Ok(samples)
}

/// Largest α sample of an ADG run on the full input `a`; 1 when nothing was
/// tested or no prefix qualifies.
pub fn alpha_of_trace<U: Utility + ?Sized>(g: &U, a: &PartialAssignment, trace: &RunTrace) -> Result<f64> {
    if a.len() != trace.arity() {
        return Err(Error::ArityMismatch {
            expected: trace.arity(),
            found: a.len(),
        });
    }
    if trace.is_empty() {
        return Ok(1.0);
    }
    let cover = trace.final_assignment();
    if !a.extends(&cover) {
        return Err(Error::InvalidFormula(format!(
            "trace outcomes {cover} disagree with input {a}"
        )));
    }
    Ok(alpha_samples(g, trace)?
        .iter()
        .map(|s| s.ratio)
        .fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.max(r))))
        .unwrap_or(1.0))
}
