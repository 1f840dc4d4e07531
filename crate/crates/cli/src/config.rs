use std::fmt;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::ValueEnum;
use sbfe::gen::GenSpec;
use sbfe::oracle::OracleLimits;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    Greedy,
    Adg,
    /// Cheapest-first fixed order.
    Baseline,
}

impl fmt::Display for EngineChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineChoice::Greedy => "greedy",
            EngineChoice::Adg => "adg",
            EngineChoice::Baseline => "baseline",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Files(Vec<PathBuf>),
    Generator {
        spec: GenSpec,
        count: usize,
    },
    /// `count` instances of each Boolean construction.
    Battery {
        count: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub engines: Vec<EngineChoice>,
    pub source: Source,
    pub seed: Option<u64>,
    pub limits: OracleLimits,
    pub format: OutputFormat,
    pub trials: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !matches!(self.source, Source::Files(_)) && self.seed.is_none() {
            bail!("a generator source needs --seed");
        }
        let defaults = OracleLimits::default();
        if self.limits.dp_max_n > 20 {
            bail!("--max-n {} is above the oracle ceiling of 20", self.limits.dp_max_n);
        }
        if self.limits.enumeration_max_n > defaults.enumeration_max_n {
            bail!(
                "enumeration limit {} is above {}",
                self.limits.enumeration_max_n,
                defaults.enumeration_max_n
            );
        }
        if self.engines.is_empty() {
            bail!("no engine selected");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(source: Source, seed: Option<u64>) -> ExperimentConfig {
        ExperimentConfig {
            engines: vec![EngineChoice::Adg],
            source,
            seed,
            limits: OracleLimits::default(),
            format: OutputFormat::Csv,
            trials: 10,
        }
    }

    #[test]
    fn generators_need_a_seed() {
        let spec: GenSpec = "threshold:n=3".parse().unwrap();
        assert!(base(Source::Generator { spec, count: 1 }, None).validate().is_err());
        assert!(base(Source::Generator { spec, count: 1 }, Some(1)).validate().is_ok());
        assert!(base(Source::Files(vec![]), None).validate().is_ok());
    }

    #[test]
    fn limits_are_guarded() {
        let mut c = base(Source::Battery { count: 1 }, Some(0));
        c.limits.dp_max_n = 21;
        assert!(c.validate().is_err());
        c.limits.dp_max_n = 10;
        c.engines.clear();
        assert!(c.validate().is_err());
    }
}
