use crate::distribution::{CostVector, ProductDistribution};
use crate::error::{Error, Result};
use crate::formula::{BooleanFunction, CdnfFormula, ThresholdFormula, TruthTable};
use crate::policies::{run_engine, Engine};
use crate::trace::RunTrace;
use crate::utility::{cdnf_utility, decode_cdnf, threshold_utility, truth_table_utility, Utility};

fn undecided(b: String) -> Error {
    Error::NoProgress { assignment: b }
}

/// Adaptive Greedy on the CDNF utility. Constant formulas cost nothing.
pub fn evaluate_cdnf(
    f: &CdnfFormula,
    d: &ProductDistribution,
    c: &CostVector,
    outcome: impl FnMut(usize) -> bool,
) -> Result<(bool, RunTrace)> {
    if let Some(v) = f.constant_value() {
        return Ok((v, RunTrace::new(f.arity())));
    }
    let g = cdnf_utility(f)?;
    let trace = run_engine(Engine::Greedy, &g, d, c, outcome)?;
    let b = trace.final_assignment();
    let value = decode_cdnf(&g, &b).ok_or_else(|| undecided(b.to_string()))?;
    Ok((value, trace))
}

fn evaluate_threshold(
    engine: Engine,
    f: &ThresholdFormula,
    d: &ProductDistribution,
    c: &CostVector,
    outcome: impl FnMut(usize) -> bool,
) -> Result<(bool, RunTrace)> {
    if let Some(v) = f.constant_value() {
        return Ok((v, RunTrace::new(f.arity())));
    }
    let g = threshold_utility(f)?;
    let trace = run_engine(engine, &g, d, c, outcome)?;
    let b = trace.final_assignment();
    let value = g.decode(&b).ok_or_else(|| undecided(b.to_string()))?;
    Ok((value, trace))
}

/// Adaptive Greedy on the threshold utility.
pub fn evaluate_threshold_q(
    f: &ThresholdFormula,
    d: &ProductDistribution,
    c: &CostVector,
    outcome: impl FnMut(usize) -> bool,
) -> Result<(bool, RunTrace)> {
    evaluate_threshold(Engine::Greedy, f, d, c, outcome)
}

/// ADG on the threshold utility.
pub fn evaluate_threshold_adg(
    f: &ThresholdFormula,
    d: &ProductDistribution,
    c: &CostVector,
    outcome: impl FnMut(usize) -> bool,
) -> Result<(bool, RunTrace)> {
    evaluate_threshold(Engine::Adg, f, d, c, outcome)
}

/// Either engine on the truth-table utility.
pub fn evaluate_truth_table(
    engine: Engine,
    f: &TruthTable,
    d: &ProductDistribution,
    c: &CostVector,
    outcome: impl FnMut(usize) -> bool,
) -> Result<(bool, RunTrace)> {
    let g = match truth_table_utility(f) {
        Ok(g) => g,
        Err(Error::ConstantFunction { value }) => return Ok((value, RunTrace::new(f.arity()))),
        Err(e) => return Err(e),
    };
    let trace = run_engine(engine, &g, d, c, outcome)?;
    let b = trace.final_assignment();
    // a side at goal has ruled out every input of its value
    let value = if g.left().at_goal(&b) {
        true
    } else if g.right().at_goal(&b) {
        false
    } else {
        return Err(undecided(b.to_string()));
    };
    Ok((value, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::PartialAssignment;
    use crate::policy::oracle_from;

    fn pa(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    fn unit(n: usize) -> (ProductDistribution, CostVector) {
        (ProductDistribution::uniform(n).unwrap(), CostVector::unit(n).unwrap())
    }

    #[test]
    fn cdnf_conjunction() {
        let (d, c) = unit(2);
        let f = CdnfFormula::conjunction(2).unwrap();
        let (v, t) = evaluate_cdnf(&f, &d, &c, oracle_from(pa("01"))).unwrap();
        assert!(!v);
        assert_eq!(t.tested, vec![0]);
    }

    #[test]
    fn cdnf_constant_true() {
        let (d, c) = unit(2);
        let f = CdnfFormula::new(2, &[], &[vec![1], vec![-1]]).unwrap();
        let (v, t) = evaluate_cdnf(&f, &d, &c, |_| unreachable!()).unwrap();
        assert!(v);
        assert!(t.is_empty());
    }

    #[test]
    fn threshold_drivers() {
        let (d, c) = unit(2);
        let f = ThresholdFormula::new(vec![1, 1], 1).unwrap();
        let (v, t) = evaluate_threshold_q(&f, &d, &c, oracle_from(pa("10"))).unwrap();
        assert!(v);
        assert_eq!(t.len(), 1);
        let f = ThresholdFormula::new(vec![1, 1], 3).unwrap();
        let (v, t) = evaluate_threshold_adg(&f, &d, &c, |_| unreachable!()).unwrap();
        assert!(!v);
        assert!(t.is_empty());
    }

    #[test]
    fn drivers_agree_with_direct_evaluation() {
        let f = ThresholdFormula::new(vec![3, -2, 1, -1], 1).unwrap();
        let cdnf = CdnfFormula::new(3, &[vec![1, 2], vec![-1, 3]], &[vec![1, 3], vec![-1, 2]]).unwrap();
        let table = TruthTable::from_fn(&f).unwrap();
        let (d, c) = unit(4);
        let (d3, c3) = unit(3);
        for x in PartialAssignment::all_full(4) {
            assert_eq!(
                evaluate_threshold_q(&f, &d, &c, oracle_from(x)).unwrap().0,
                f.evaluate(&x)
            );
            assert_eq!(
                evaluate_threshold_adg(&f, &d, &c, oracle_from(x)).unwrap().0,
                f.evaluate(&x)
            );
            let (v, _) = evaluate_truth_table(Engine::Greedy, &table, &d, &c, oracle_from(x)).unwrap();
            assert_eq!(v, f.evaluate(&x));
        }
        for x in PartialAssignment::all_full(3) {
            assert_eq!(
                evaluate_cdnf(&cdnf, &d3, &c3, oracle_from(x)).unwrap().0,
                cdnf.evaluate(&x)
            );
        }
    }
}
