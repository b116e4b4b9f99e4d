//! Run configuration: flat `section.key = value` text, `#` comments.
//!
//! Every key has a default, so an empty file is a valid config. Unknown or
//! repeated keys are errors carrying the line number.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use confine::{
    ExactConfig, Exec, ExpectationMode, PotentialModel, QuadratureConfig, SolveOptions,
};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSelection {
    Paper,
    Normalized,
    Both,
}

impl ModeSelection {
    pub fn modes(self) -> Vec<ExpectationMode> {
        match self {
            ModeSelection::Paper => vec![ExpectationMode::Paper],
            ModeSelection::Normalized => vec![ExpectationMode::Normalized],
            ModeSelection::Both => ExpectationMode::ALL.to_vec(),
        }
    }
}

impl FromStr for ModeSelection {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper" => Ok(ModeSelection::Paper),
            "normalized" => Ok(ModeSelection::Normalized),
            "both" => Ok(ModeSelection::Both),
            _ => Err(format!("expected paper, normalized or both, got '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(format!("expected csv or json, got '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: PotentialModel,
    /// Trial exponent.
    pub b: f64,
    pub z: Vec<f64>,
    pub mu: f64,
    pub modes: ModeSelection,
    pub quad: QuadratureConfig,
    /// Scan and refinement settings; the mode field is set per run.
    pub solver: SolveOptions,
    pub exact: ExactConfig,
    pub out_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub density_samples: usize,
    /// Fixed `a` for density curves instead of the optimized one.
    pub density_a: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: PotentialModel::cornell(0.5, 2.0).expect("finite"),
            b: 1.0,
            z: vec![1.0],
            mu: 1.0,
            modes: ModeSelection::Normalized,
            quad: QuadratureConfig::default(),
            solver: SolveOptions::default(),
            exact: ExactConfig::default(),
            out_dir: None,
            format: OutputFormat::Csv,
            density_samples: 1001,
            density_a: None,
        }
    }
}

pub const KEYS: &[&str] = &[
    "potential.kind",
    "potential.A",
    "potential.B",
    "potential.C",
    "trial.b",
    "run.z",
    "run.mu",
    "run.mode",
    "quad.abs_tol",
    "quad.rel_tol",
    "quad.max_subdivisions",
    "quad.order",
    "solver.a_min",
    "solver.a_max",
    "solver.scan_points",
    "solver.tolerance_a",
    "solver.max_iterations",
    "solver.exec",
    "exact.n_interior",
    "exact.richardson",
    "exact.eigen_tol",
    "output.dir",
    "output.format",
    "density.samples",
    "density.a",
];

struct Entries<'a> {
    path: &'a str,
    values: HashMap<&'a str, (usize, &'a str)>,
}

impl<'a> Entries<'a> {
    fn error(&self, line: usize, message: impl fmt::Display) -> CliError {
        CliError::ConfigLine {
            path: self.path.to_string(),
            line,
            message: message.to_string(),
        }
    }

    fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<(usize, T)>>
    where
        T::Err: fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(&(line, raw)) => raw
                .parse::<T>()
                .map(|v| Some((line, v)))
                .map_err(|e| self.error(line, format!("{key}: cannot parse '{raw}': {e}"))),
        }
    }

    fn set<T: FromStr>(&self, key: &str, slot: &mut T) -> CliResult<()>
    where
        T::Err: fmt::Display,
    {
        if let Some((_, v)) = self.get(key)? {
            *slot = v;
        }
        Ok(())
    }

    fn line(&self, key: &str) -> Option<usize> {
        self.values.get(key).map(|&(l, _)| l)
    }

    /// Wraps a validation failure, pointing at `key` when the file set it.
    fn invalid(&self, key: &str, message: impl fmt::Display) -> CliError {
        match self.line(key) {
            Some(line) => self.error(line, format!("{key}: {message}")),
            None => CliError::Config(format!("{key}: {message}")),
        }
    }
}

fn parse_z_list(raw: &str) -> Result<Vec<f64>, String> {
    raw.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|e| format!("'{s}': {e}")))
        .collect()
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, path: &str) -> CliResult<Self> {
        let mut entries = Entries {
            path,
            values: HashMap::new(),
        };
        for (i, raw_line) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| entries.error(line, format!("expected 'key = value', got '{content}'")))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(entries.error(line, format!("unknown key '{key}'")));
            }
            if value.is_empty() {
                return Err(entries.error(line, format!("{key}: missing value")));
            }
            if let Some((first, _)) = entries.values.insert(key, (line, value)) {
                return Err(entries.error(line, format!("{key} already set on line {first}")));
            }
        }

        let mut cfg = RunConfig::default();
        let kind = entries
            .get::<String>("potential.kind")?
            .map(|(_, k)| k)
            .unwrap_or_else(|| "cornell".into());
        let coef = |key: &str, default: f64| -> CliResult<f64> {
            Ok(entries.get::<f64>(key)?.map(|(_, v)| v).unwrap_or(default))
        };
        let (a, b) = (coef("potential.A", 0.5)?, coef("potential.B", 2.0)?);
        cfg.model = match kind.as_str() {
            "cornell" => {
                if let Some(line) = entries.line("potential.C") {
                    return Err(entries.error(line, "potential.C only applies to the global model"));
                }
                PotentialModel::cornell(a, b)
            }
            "global" => PotentialModel::global(a, b, coef("potential.C", 0.8)?),
            other => {
                return Err(entries.invalid(
                    "potential.kind",
                    format!("expected cornell or global, got '{other}'"),
                ))
            }
        }
        .map_err(|e| entries.invalid("potential.A", e))?;

        entries.set("trial.b", &mut cfg.b)?;
        if let Some(&(line, raw)) = entries.values.get("run.z") {
            cfg.z = parse_z_list(raw).map_err(|e| entries.error(line, format!("run.z: {e}")))?;
        }
        entries.set("run.mu", &mut cfg.mu)?;
        entries.set("run.mode", &mut cfg.modes)?;

        entries.set("quad.abs_tol", &mut cfg.quad.abs_tol)?;
        entries.set("quad.rel_tol", &mut cfg.quad.rel_tol)?;
        entries.set("quad.max_subdivisions", &mut cfg.quad.max_subdivisions)?;
        entries.set("quad.order", &mut cfg.quad.order)?;

        entries.set("solver.a_min", &mut cfg.solver.a_min)?;
        entries.set("solver.a_max", &mut cfg.solver.a_max)?;
        entries.set("solver.scan_points", &mut cfg.solver.scan_points)?;
        entries.set("solver.tolerance_a", &mut cfg.solver.tolerance_a)?;
        entries.set("solver.max_iterations", &mut cfg.solver.max_iterations)?;
        if let Some((line, exec)) = entries.get::<String>("solver.exec")? {
            cfg.solver.exec = match exec.as_str() {
                "parallel" => Exec::Parallel,
                "sequential" => Exec::Sequential,
                _ => {
                    return Err(entries.error(
                        line,
                        format!("solver.exec: expected parallel or sequential, got '{exec}'"),
                    ))
                }
            };
        }

        entries.set("exact.n_interior", &mut cfg.exact.n_interior)?;
        entries.set("exact.richardson", &mut cfg.exact.richardson)?;
        entries.set("exact.eigen_tol", &mut cfg.exact.eigen_tol)?;

        if let Some((_, dir)) = entries.get::<String>("output.dir")? {
            cfg.out_dir = Some(PathBuf::from(dir));
        }
        entries.set("output.format", &mut cfg.format)?;
        entries.set("density.samples", &mut cfg.density_samples)?;
        if let Some((_, a)) = entries.get::<f64>("density.a")? {
            cfg.density_a = Some(a);
        }

        cfg.validate_with(|key, msg| entries.invalid(key, msg))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        self.validate_with(|key, msg| CliError::Config(format!("{key}: {msg}")))
    }

    fn validate_with(&self, err: impl Fn(&str, String) -> CliError) -> CliResult<()> {
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(err("trial.b", format!("must be positive, got {}", self.b)));
        }
        if self.z.is_empty() {
            return Err(err("run.z", "list is empty".into()));
        }
        if let Some(z) = self.z.iter().find(|z| !(**z > 0.0 && z.is_finite())) {
            return Err(err("run.z", format!("every z must be positive, got {z}")));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(err("run.mu", format!("must be positive, got {}", self.mu)));
        }
        self.quad
            .validate()
            .map_err(|e| err("quad.order", e.to_string()))?;
        self.solver
            .validate()
            .map_err(|e| err("solver.a_min", e.to_string()))?;
        self.exact
            .validate()
            .map_err(|e| err("exact.n_interior", e.to_string()))?;
        if self.density_samples < 2 {
            return Err(err(
                "density.samples",
                format!("need at least 2, got {}", self.density_samples),
            ));
        }
        if let Some(a) = self.density_a {
            if !(a >= 0.0 && a.is_finite()) {
                return Err(err("density.a", format!("must be non-negative, got {a}")));
            }
        }
        Ok(())
    }

    /// Solver options for one mode, sharing this config's quadrature settings.
    pub fn solve_options(&self, mode: ExpectationMode) -> SolveOptions {
        SolveOptions {
            mode,
            quad: self.quad,
            ..self.solver
        }
    }
}
