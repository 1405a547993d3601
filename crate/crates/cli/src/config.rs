//! Command-line surface and the resolved run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "xxchain",
    version,
    about = "Exact spectra, Gibbs states and purity of the open XX chain"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// All 2^N energies on a field grid.
    Spectrum,
    /// Spin-basis amplitudes of the lowest state in sector k.
    GroundState,
    /// Fields B_k where neighbouring ground sectors cross.
    Crossings,
    /// Boltzmann populations of every level on a (B, T) grid.
    Thermal,
    /// Purity Tr ρ² on a (B, T) grid, closed form and dense.
    Purity,
    /// Centered difference dP/dB of the purity.
    PurityDerivative,
    /// Negativity sweep over T, or the two-spin separability temperature.
    Negativity,
    /// Finite-chain ground energy density against the infinite-chain curve.
    ThermoLimit,
    /// Cross-check the closed forms against dense diagonalization.
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::GroundState => "ground-state",
            Command::Crossings => "crossings",
            Command::Thermal => "thermal",
            Command::Purity => "purity",
            Command::PurityDerivative => "purity-derivative",
            Command::Negativity => "negativity",
            Command::ThermoLimit => "thermo-limit",
            Command::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Number of spins.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Coupling J.
    #[arg(long, global = true, default_value_t = 1.0, allow_hyphen_values = true)]
    pub j: f64,
    /// Single field value.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Field grid min:max:steps, endpoints included.
    #[arg(
        long = "b-range",
        global = true,
        allow_hyphen_values = true,
        value_name = "MIN:MAX:STEPS"
    )]
    pub b_range: Option<Range>,
    /// Single temperature (k_B = 1); 0 means the ground-space limit.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Temperature grid min:max:steps, endpoints included.
    #[arg(
        long = "t-range",
        global = true,
        allow_hyphen_values = true,
        value_name = "MIN:MAX:STEPS"
    )]
    pub t_range: Option<Range>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Largest N for which dense matrices are built.
    #[arg(long = "dense-cap", global = true, env = "XXCHAIN_DENSE_CAP")]
    pub dense_cap: Option<usize>,
    /// Magnetization sector (number of flipped spins).
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Sites of subsystem A, comma separated (default: first half).
    #[arg(long = "split-a", global = true, value_delimiter = ',')]
    pub split_a: Option<Vec<usize>>,
    /// Chain lengths for the convergence report, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Field step of the centered difference.
    #[arg(long, global = true)]
    pub db: Option<f64>,
}

/// Inclusive, linearly spaced grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / last
                }
            })
            .collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts.as_slice() else {
            return Err(format!("expected MIN:MAX:STEPS, got `{s}`"));
        };
        let min: f64 = min.trim().parse().map_err(|e| format!("bad minimum `{min}`: {e}"))?;
        let max: f64 = max.trim().parse().map_err(|e| format!("bad maximum `{max}`: {e}"))?;
        let steps: usize = steps
            .trim()
            .parse()
            .map_err(|e| format!("bad step count `{steps}`: {e}"))?;
        if !(min.is_finite() && max.is_finite()) {
            return Err("range endpoints must be finite".into());
        }
        if steps == 0 {
            return Err("range needs at least one step".into());
        }
        if min > max {
            return Err(format!("range minimum {min} exceeds maximum {max}"));
        }
        if steps == 1 && min != max {
            return Err("a one-step range needs MIN == MAX".into());
        }
        Ok(Range { min, max, steps })
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.steps)
    }
}

/// One axis of a sweep: a single value or a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Value(f64),
    Range(Range),
}

impl Axis {
    fn resolve(name: &str, value: Option<f64>, range: Option<Range>) -> Result<Option<Axis>> {
        match (value, range) {
            (Some(_), Some(_)) => Err(CliError::usage(format!(
                "give either --{name} or --{name}-range, not both"
            ))),
            (Some(v), None) => Ok(Some(Axis::Value(v))),
            (None, Some(r)) => Ok(Some(Axis::Range(r))),
            (None, None) => Ok(None),
        }
    }

    pub fn points(&self) -> Vec<f64> {
        match self {
            Axis::Value(v) => vec![*v],
            Axis::Range(r) => r.points(),
        }
    }
}

/// Everything that determines a run's output; echoed as JSON `meta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: Command,
    pub n: Option<usize>,
    pub j: f64,
    pub b: Option<Axis>,
    pub t: Option<Axis>,
    pub format: Format,
    pub output: Option<String>,
    pub dense_cap: usize,
    pub k: Option<usize>,
    pub split_a: Option<Vec<usize>>,
    pub sizes: Option<Vec<usize>>,
    pub db: Option<f64>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let o = cli.opts;
        let dense_cap = o.dense_cap.unwrap_or(xxchain::thermal::DENSE_CAP);
        if dense_cap > xxchain::thermal::MAX_DENSE_CAP {
            return Err(CliError::usage(format!(
                "--dense-cap {dense_cap} exceeds the hard limit {}",
                xxchain::thermal::MAX_DENSE_CAP
            )));
        }
        if let Some(db) = o.db {
            if !(db.is_finite() && db > 0.0) {
                return Err(CliError::usage(format!("--db must be positive, got {db}")));
            }
        }
        Ok(RunConfig {
            subcommand: cli.command,
            n: o.n,
            j: o.j,
            b: Axis::resolve("b", o.b, o.b_range)?,
            t: Axis::resolve("t", o.t, o.t_range)?,
            format: o.format,
            output: o.output.map(|p| p.display().to_string()),
            dense_cap,
            k: o.k,
            split_a: o.split_a,
            sizes: o.sizes,
            db: o.db,
        })
    }

    pub fn require_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| CliError::usage(format!("{} needs --n", self.subcommand.name())))
    }

    pub fn require_b(&self) -> Result<Vec<f64>> {
        self.b
            .map(|a| a.points())
            .ok_or_else(|| CliError::usage(format!("{} needs --b or --b-range", self.subcommand.name())))
    }

    pub fn require_t(&self) -> Result<Vec<f64>> {
        self.t
            .map(|a| a.points())
            .ok_or_else(|| CliError::usage(format!("{} needs --t or --t-range", self.subcommand.name())))
    }
}
