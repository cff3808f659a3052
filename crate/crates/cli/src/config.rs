//! Run configuration: defaults, then a flat `key = value` file, then flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nkcore::flag::{LieAlg, Normalization};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "nk-lab",
    version,
    about = "Nearly-Kähler structure and deformation checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Type-decomposition identities, duality round trips and linearized duals.
    VerifyAlgebra,
    /// Invariant structure on F₃, torsion classes, dv identities, Dirac kernel.
    FlagCheck,
    /// Infinitesimal deformations σ̂_ξ, ρ_ξ and the quadratic terms.
    Deformations,
    /// Monte Carlo estimate of the second-order obstruction.
    Obstruction,
    /// Invariant Chevalley–Eilenberg cohomology and harmonic types.
    Cohomology,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::VerifyAlgebra => "verify-algebra",
            CommandKind::FlagCheck => "flag-check",
            CommandKind::Deformations => "deformations",
            CommandKind::Obstruction => "obstruction",
            CommandKind::Cohomology => "cohomology",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        [
            CommandKind::VerifyAlgebra,
            CommandKind::FlagCheck,
            CommandKind::Deformations,
            CommandKind::Obstruction,
            CommandKind::Cohomology,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }

    fn default_samples(self) -> usize {
        match self {
            CommandKind::VerifyAlgebra => 1000,
            CommandKind::FlagCheck => 10_000,
            CommandKind::Deformations => 100,
            CommandKind::Obstruction => 200_000,
            CommandKind::Cohomology => 0,
        }
    }

    fn is_monte_carlo(self) -> bool {
        matches!(self, CommandKind::FlagCheck | CommandKind::Obstruction)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Geometric,
    Formula,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random inputs, points or Haar samples, depending on the command.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long = "fd-step", global = true)]
    pub fd_step: Option<f64>,
    /// `VALUE` for every check, or `NAME=VALUE` for one check. Repeatable.
    #[arg(long, global = true)]
    pub tol: Vec<String>,
    /// `diag:a,b,c` or eight comma-separated frame coordinates. Repeatable.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi: Vec<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Flat `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Record wall time in the report (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Scale of `z` in the closed formulas for `ρ_ξ` and `Q₃`.
    #[arg(long, value_enum, global = true)]
    pub normalization: Option<NormalizationArg>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ToleranceOverrides {
    pub all: Option<f64>,
    pub named: BTreeMap<String, f64>,
}

impl ToleranceOverrides {
    pub fn resolve(&self, name: &str, default: f64) -> f64 {
        self.named.get(name).copied().or(self.all).unwrap_or(default)
    }

    fn push(&mut self, spec: &str) -> Result<(), CliError> {
        match spec.split_once('=') {
            Some((name, value)) => {
                self.named
                    .insert(name.trim().to_string(), parse_f64("tol", value)?);
            }
            None => self.all = Some(parse_f64("tol", spec)?),
        }
        Ok(())
    }
}

/// A parsed `--xi` value, keeping the text it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct XiSpec {
    pub text: String,
    pub xi: LieAlg,
}

impl XiSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let text = text.trim();
        let bad = |why: &str| CliError::Usage(format!("bad --xi `{text}`: {why}"));
        let numbers = |s: &str| -> Result<Vec<f64>, CliError> {
            s.split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| bad("not a number")))
                .collect()
        };
        let xi = if let Some(rest) = text.strip_prefix("diag:") {
            let v = numbers(rest)?;
            if v.len() != 3 {
                return Err(bad("diag takes three entries"));
            }
            LieAlg::diag(v[0], v[1], v[2]).map_err(|e| bad(&e.to_string()))?
        } else {
            let v = numbers(text)?;
            let coords: [f64; 8] = v.try_into().map_err(|_| bad("expected eight coordinates"))?;
            LieAlg::from_coords(&coords)
        };
        if xi.coords().iter().any(|c| !c.is_finite()) {
            return Err(bad("non-finite entry"));
        }
        Ok(Self {
            text: text.to_string(),
            xi,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub seed: u64,
    pub samples: usize,
    pub fd_step: f64,
    pub tolerances: ToleranceOverrides,
    pub xi: Vec<XiSpec>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub timing: bool,
    pub normalization: Normalization,
}

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_XI: &str = "diag:1,1,-2";

impl RunConfig {
    pub fn defaults(command: CommandKind) -> Self {
        Self {
            command,
            seed: DEFAULT_SEED,
            samples: command.default_samples(),
            fd_step: 1e-4,
            tolerances: ToleranceOverrides::default(),
            xi: Vec::new(),
            out: None,
            format: Format::Json,
            timing: false,
            normalization: Normalization::Geometric,
        }
    }

    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let mut cfg = Self::defaults(cli.command);
        if let Some(path) = &cli.flags.config {
            cfg.apply_file(path)?;
        }
        cfg.apply_flags(&cli.flags)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    /// `key = value` lines; `#` starts a comment; `xi` may repeat, and
    /// `tol.NAME = VALUE` sets one check's tolerance.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        let mut xi_from_file = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "seed" => self.seed = parse_u64(key, value)?,
                "samples" => self.samples = parse_usize(key, value)?,
                "fd-step" | "fd_step" => self.fd_step = parse_f64(key, value)?,
                "tol" => self.tolerances.push(value)?,
                "xi" => xi_from_file.push(XiSpec::parse(value)?),
                "out" => self.out = Some(PathBuf::from(value)),
                "format" => self.format = Format::from_str(value, true).map_err(CliError::Usage)?,
                "timing" => self.timing = parse_bool(key, value)?,
                "normalization" => {
                    self.normalization =
                        normalization(NormalizationArg::from_str(value, true).map_err(CliError::Usage)?)
                }
                _ => match key.strip_prefix("tol.") {
                    Some(name) => {
                        self.tolerances
                            .named
                            .insert(name.to_string(), parse_f64(key, value)?);
                    }
                    None => return Err(CliError::Usage(format!("unknown config key `{key}`"))),
                },
            }
        }
        if !xi_from_file.is_empty() {
            self.xi = xi_from_file;
        }
        Ok(())
    }

    pub fn apply_flags(&mut self, flags: &Flags) -> Result<(), CliError> {
        if let Some(seed) = flags.seed {
            self.seed = seed;
        }
        if let Some(samples) = flags.samples {
            self.samples = samples;
        }
        if let Some(h) = flags.fd_step {
            self.fd_step = h;
        }
        for t in &flags.tol {
            self.tolerances.push(t)?;
        }
        if !flags.xi.is_empty() {
            self.xi = flags
                .xi
                .iter()
                .map(|s| XiSpec::parse(s))
                .collect::<Result<_, _>>()?;
        }
        if let Some(out) = &flags.out {
            self.out = Some(out.clone());
        }
        if let Some(format) = flags.format {
            self.format = format;
        }
        self.timing |= flags.timing;
        if let Some(n) = flags.normalization {
            self.normalization = normalization(n);
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.fd_step > 1e-8 && self.fd_step < 1e-1) {
            return Err(CliError::Usage(format!(
                "fd-step {} outside (1e-8, 1e-1)",
                self.fd_step
            )));
        }
        if self.command.is_monte_carlo() && self.samples < nkcore::flag::haar::MIN_SAMPLES {
            return Err(CliError::Usage(format!(
                "{} needs at least {} samples",
                self.command.name(),
                nkcore::flag::haar::MIN_SAMPLES
            )));
        }
        if self.command != CommandKind::Cohomology && self.samples == 0 {
            return Err(CliError::Usage("samples must be positive".into()));
        }
        let all = self.tolerances.all.into_iter();
        if all
            .chain(self.tolerances.named.values().copied())
            .any(|t| t.is_nan() || t < 0.0)
        {
            return Err(CliError::Usage("tolerances must be non-negative".into()));
        }
        Ok(())
    }

    /// The requested ξ, or the default one.
    pub fn xi_or_default(&self) -> Vec<XiSpec> {
        if self.xi.is_empty() {
            vec![XiSpec::parse(DEFAULT_XI).expect("valid default")]
        } else {
            self.xi.clone()
        }
    }
}

fn normalization(n: NormalizationArg) -> Normalization {
    match n {
        NormalizationArg::Geometric => Normalization::Geometric,
        NormalizationArg::Formula => Normalization::Formula,
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("`{key}`: `{value}` is not a number")))
}

fn parse_u64(key: &str, value: &str) -> Result<u64, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("`{key}`: `{value}` is not a non-negative integer")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("`{key}`: `{value}` is not a non-negative integer")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(CliError::Usage(format!("`{key}`: `{value}` is not a boolean"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_specs() {
        let d = XiSpec::parse("diag:1,1,-2").unwrap();
        assert!((d.xi.idet() - -2.0).abs() < 1e-12);
        let c = XiSpec::parse("1,0,0,0,0,0,0,0").unwrap();
        assert!((c.xi.coords()[0] - 1.0).abs() < 1e-15);
        assert!(XiSpec::parse("diag:1,1,1").is_err());
        assert!(XiSpec::parse("1,2,3").is_err());
        assert!(XiSpec::parse("diag:a,b,c").is_err());
    }

    #[test]
    fn file_then_flags() {
        let mut cfg = RunConfig::defaults(CommandKind::Obstruction);
        cfg.apply_text("# comment\nseed = 3\nsamples = 500\nxi = diag:1,-1,0\ntol.ratio.consistency = 4\n")
            .unwrap();
        assert_eq!((cfg.seed, cfg.samples), (3, 500));
        assert_eq!(cfg.xi[0].text, "diag:1,-1,0");
        assert_eq!(cfg.tolerances.resolve("ratio.consistency", 3.0), 4.0);
        let flags = Flags {
            seed: Some(11),
            tol: vec!["1e-3".into()],
            ..Flags::default()
        };
        cfg.apply_flags(&flags).unwrap();
        assert_eq!(cfg.seed, 11);
        assert_eq!(cfg.tolerances.resolve("other", 1.0), 1e-3);
        assert_eq!(cfg.tolerances.resolve("ratio.consistency", 3.0), 4.0);
    }

    #[test]
    fn validation() {
        let mut cfg = RunConfig::defaults(CommandKind::Obstruction);
        cfg.samples = 50;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::defaults(CommandKind::Deformations);
        cfg.fd_step = 0.5;
        assert!(cfg.validate().is_err());
        assert!(cfg.apply_text("bogus = 1").is_err());
        assert!(cfg.apply_text("seed: 1").is_err());
    }
}
