//! Experiment runner for the `sbfe` library. Reports are CSV or JSON rows in
//! a fixed column order.

pub mod config;
pub mod eval;
pub mod gap;
pub mod report;
pub mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use sbfe::gen::{self, GenSpec};
use sbfe::oracle::OracleLimits;

use config::{EngineChoice, ExperimentConfig, OutputFormat, Source};
use verify::{Fixture, Suite};

#[derive(Debug, Parser)]
#[command(name = "sbfe", version, about = "Stochastic Boolean function evaluation experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Engines to run, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "greedy,adg,baseline")]
    pub engine: Vec<EngineChoice>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Largest n handed to the exact optimum oracle.
    #[arg(long, default_value_t = OracleLimits::default().dp_max_n)]
    pub max_n: usize,
    /// Random axiom checks per instance beyond the exhaustive range.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Report file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write generated instance files.
    Gen {
        /// Generator spec such as `threshold:n=6` or `cdnf:n=5,k=3,d=2`.
        spec: GenSpec,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Output file, or directory when `--count` is above 1.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run engines on instances and compare against the optimum.
    Eval {
        /// Instance files.
        #[arg(required_unless_present = "gen")]
        files: Vec<PathBuf>,
        /// Generator spec used instead of files.
        #[arg(long, conflicts_with = "files", requires = "seed")]
        gen: Option<GenSpec>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the verification suites on a generated battery or given files.
    Verify {
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Instances per construction in the generated battery.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, required_unless_present = "files")]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Optimal evaluation cost against expected certificate cost on the
    /// harmonic disjunction.
    GapDemo {
        #[arg(long, value_delimiter = ',', default_values_t = gap::GAP_SIZES)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn config(source: Source, seed: Option<u64>, common: &Common) -> ExperimentConfig {
    ExperimentConfig {
        engines: common.engine.clone(),
        source,
        seed,
        limits: OracleLimits {
            dp_max_n: common.max_n,
            ..OracleLimits::default()
        },
        format: common.format,
        trials: common.trials,
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

/// Runs one command with extra verification fixtures. Returns whether every
/// check passed.
pub fn run_with(cli: Cli, fixtures: &[Fixture]) -> Result<bool> {
    match cli.command {
        Command::Gen { spec, seed, count, out } => {
            let battery = gen::battery(&spec, count, seed)?;
            match (count, out) {
                (1, out) => write!(sink(out.as_deref())?, "{}", battery[0].to_toml())?,
                (_, Some(dir)) => {
                    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                    for (i, inst) in battery.iter().enumerate() {
                        let path = dir.join(format!("instance-{i:03}.toml"));
                        fs::write(&path, inst.to_toml()).with_context(|| format!("writing {}", path.display()))?;
                    }
                }
                (_, None) => bail!("--count above 1 needs --out DIR"),
            }
            Ok(true)
        }
        Command::Eval {
            files,
            gen,
            count,
            seed,
            common,
        } => {
            let source = match gen {
                Some(spec) => Source::Generator { spec, count },
                None => Source::Files(files),
            };
            let rows = eval::cmd_eval(&config(source, seed, &common))?;
            report::write_rows(&rows, common.format, &mut *sink(common.out.as_deref())?)?;
            Ok(rows.iter().all(|r| r.pass != Some(false)))
        }
        Command::Verify {
            files,
            suite,
            count,
            seed,
            common,
        } => {
            let source = if files.is_empty() {
                Source::Battery { count }
            } else {
                Source::Files(files)
            };
            let rows = verify::cmd_verify(&config(source, seed, &common), suite, fixtures)?;
            report::write_rows(&rows, common.format, &mut *sink(common.out.as_deref())?)?;
            for r in rows.iter().filter(|r| !r.pass) {
                eprintln!("FAIL {} {}: {}", r.check, r.instance_id, r.detail);
            }
            Ok(rows.iter().all(|r| r.pass))
        }
        Command::GapDemo { sizes, format, out } => {
            let rows = gap::cmd_gap_demo(&sizes)?;
            report::write_rows(&rows, format, &mut *sink(out.as_deref())?)?;
            Ok(rows.iter().all(|r| r.pass))
        }
    }
}

pub fn run(cli: Cli) -> Result<bool> {
    run_with(cli, &[])
}
