//! Run configuration: command-line flags, an optional TOML file, and the merge of the two.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use poincare_shell::grid::{GridScale, GridSpec};
use poincare_shell::Operator;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Eig,
    Table,
    Bounds,
    Profile,
    GreensValidate,
    OracleCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorArg {
    Laplace,
    Stokes,
}

impl From<OperatorArg> for Operator {
    fn from(op: OperatorArg) -> Self {
        match op {
            OperatorArg::Laplace => Operator::Laplace,
            OperatorArg::Stokes => Operator::Stokes,
        }
    }
}

/// Named tolerances and their defaults.
pub const DEFAULT_TOLERANCES: [(&str, f64); 3] = [
    ("oracle_rel", 1e-5),
    ("greens_rel", 1e-2),
    ("invariant_slack", 1e-14),
];

pub const DEFAULT_SAMPLES: usize = 201;
pub const DEFAULT_NODES: usize = 128;
pub const DEFAULT_N_GRID: usize = 4000;
pub const DEFAULT_ORACLE_A: [f64; 3] = [0.1, 1.0, 10.0];
pub const DEFAULT_GREENS_SIGMA: [f64; 4] = [0.0, 0.25, 0.5, 0.75];

#[derive(Debug, Parser)]
#[command(name = "poincare-shell", version, about = "First Laplace and Stokes eigenvalues on spherical shells")]
pub struct Flags {
    /// eig | table | bounds | profile | greens-validate | oracle-check
    #[arg(long, value_enum)]
    pub command: Option<Command>,
    /// Inverse relative gap widths, comma separated.
    #[arg(long = "a", value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<f64>,
    /// Radius ratios, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub sigma: Vec<f64>,
    /// min:max:points:log|linear
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// NAME=VALUE, repeatable (oracle_rel, greens_rel, invariant_slack).
    #[arg(long = "tol")]
    pub tol: Vec<String>,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Operator for `profile`.
    #[arg(long, value_enum)]
    pub operator: Option<OperatorArg>,
    /// Sample count for `profile`.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Radial Nystrom nodes for `greens-validate`.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Finite-difference grid size for `oracle-check`.
    #[arg(long = "n-grid")]
    pub n_grid: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub command: Option<Command>,
    pub a: Option<Vec<f64>>,
    pub sigma: Option<Vec<f64>>,
    pub grid: Option<String>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub tol: BTreeMap<String, f64>,
    pub operator: Option<OperatorArg>,
    pub samples: Option<usize>,
    pub nodes: Option<usize>,
    pub n_grid: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub a: Vec<f64>,
    pub sigma: Vec<f64>,
    pub grid: GridSpec,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub tolerances: BTreeMap<String, f64>,
    pub operator: Operator,
    pub samples: usize,
    pub nodes: usize,
    pub n_grid: usize,
}

impl RunConfig {
    pub fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }
}

pub fn parse_grid(s: &str) -> Result<GridSpec, CliError> {
    let bad = || CliError::Usage(format!("--grid expects min:max:points:log|linear, got `{s}`"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let min: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let max: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let points: usize = parts[2].trim().parse().map_err(|_| bad())?;
    let scale = match parts[3].trim() {
        "log" => GridScale::Log,
        "linear" => GridScale::Linear,
        _ => return Err(bad()),
    };
    let grid = GridSpec { min, max, points, scale };
    grid.validate().map_err(|e| CliError::Usage(format!("--grid: {e}")))?;
    Ok(grid)
}

fn parse_tol(s: &str) -> Result<(String, f64), CliError> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("--tol expects NAME=VALUE, got `{s}`")))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("--tol {name}: `{value}` is not a number")))?;
    Ok((name.trim().to_string(), value))
}

fn insert_tol(map: &mut BTreeMap<String, f64>, name: String, value: f64) -> Result<(), CliError> {
    if !map.contains_key(&name) {
        return Err(CliError::Usage(format!("unknown tolerance `{name}`")));
    }
    if !(value.is_finite() && value >= 0.0) {
        return Err(CliError::Usage(format!("tolerance `{name}` must be finite and non-negative")));
    }
    map.insert(name, value);
    Ok(())
}

pub fn load_file(path: &PathBuf) -> Result<FileConfig, CliError> {
    let text = fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {}", path.display(), e.message())))
}

impl Flags {
    /// Merge with the config file (if any); flags override file values.
    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(p) => load_file(p)?,
            None => FileConfig::default(),
        };

        let command = self
            .command
            .or(file.command)
            .ok_or_else(|| CliError::Usage("no command given (use --command)".into()))?;
        let a = if self.a.is_empty() { file.a.unwrap_or_default() } else { self.a };
        let sigma = if self.sigma.is_empty() { file.sigma.unwrap_or_default() } else { self.sigma };
        let grid = match self.grid.or(file.grid) {
            Some(s) => parse_grid(&s)?,
            None => GridSpec::default(),
        };
        let format = self.format.or(file.format).unwrap_or(match command {
            Command::GreensValidate | Command::OracleCheck => OutputFormat::Json,
            _ => OutputFormat::Csv,
        });

        let mut tolerances: BTreeMap<String, f64> =
            DEFAULT_TOLERANCES.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        for (name, value) in file.tol {
            insert_tol(&mut tolerances, name, value)?;
        }
        for t in &self.tol {
            let (name, value) = parse_tol(t)?;
            insert_tol(&mut tolerances, name, value)?;
        }

        Ok(RunConfig {
            command,
            a,
            sigma,
            grid,
            format,
            out: self.out.or(file.out),
            tolerances,
            operator: self.operator.or(file.operator).unwrap_or(OperatorArg::Stokes).into(),
            samples: self.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES),
            nodes: self.nodes.or(file.nodes).unwrap_or(DEFAULT_NODES),
            n_grid: self.n_grid.or(file.n_grid).unwrap_or(DEFAULT_N_GRID),
        })
    }
}

/// Parse argv (including the program name) into a resolved config.
///
/// `Ok(None)` means help or version text was printed.
pub fn parse_args<I, T>(args: I) -> Result<Option<RunConfig>, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Flags::try_parse_from(args) {
        Ok(flags) => flags.resolve().map(Some),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                print!("{e}");
                Ok(None)
            }
            _ => Err(CliError::Usage(e.render().to_string().trim_end().to_string())),
        },
    }
}
