use anyhow::{bail, Result};
use sbfe::distribution::{CostVector, ProductDistribution};
use sbfe::formula::CdnfFormula;
use sbfe::oracle::{cdnf_expected_certificate_cost, optimal_expected_cost, OracleLimits};
use serde::Serialize;

/// Disjunction with unit costs and `p_i = 1/(i+1)`: optimal evaluation
/// grows like `H_n` while verification stays below 2.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRow {
    pub n: usize,
    pub opt: f64,
    pub harmonic: f64,
    pub certificate_cost: f64,
    pub pass: bool,
}

pub const GAP_SIZES: [usize; 3] = [4, 8, 16];

pub fn gap_row(n: usize) -> Result<GapRow> {
    let f = CdnfFormula::disjunction(n)?;
    let d = ProductDistribution::sbfe((1..=n).map(|i| 1.0 / (i as f64 + 1.0)).collect())?;
    let c = CostVector::unit(n)?;
    let limits = OracleLimits {
        dp_max_n: n.max(OracleLimits::default().dp_max_n),
        ..OracleLimits::default()
    };
    let (opt, _) = optimal_expected_cost(&f, &d, &c, limits)?;
    let certificate_cost = cdnf_expected_certificate_cost(&f, &d, &c, limits)?;
    let harmonic: f64 = (1..=n).map(|t| 1.0 / t as f64).sum();
    Ok(GapRow {
        n,
        opt,
        harmonic,
        certificate_cost,
        pass: (opt - harmonic).abs() <= 1e-6 && certificate_cost < 2.0,
    })
}

pub fn cmd_gap_demo(sizes: &[usize]) -> Result<Vec<GapRow>> {
    if let Some(&n) = sizes.iter().find(|&&n| n == 0 || n > 20) {
        bail!("gap-demo size {n} is outside 1..=20");
    }
    sizes.iter().map(|&n| gap_row(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_gap_is_exact() {
        let r = gap_row(4).unwrap();
        assert!((r.opt - 25.0 / 12.0).abs() < 1e-9);
        assert!(r.pass);
    }

    #[test]
    fn sizes_are_bounded() {
        assert!(cmd_gap_demo(&[0]).is_err());
        assert!(cmd_gap_demo(&[21]).is_err());
    }
}
