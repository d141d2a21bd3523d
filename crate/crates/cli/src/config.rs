//! Run configuration: a TOML file overlaid with command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use herbst_core::{RadialPotential, Table};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Which potential to build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum PotentialSpec {
    Bump,
    Gauss,
    Well,
    Table(PathBuf),
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Bump => f.write_str("bump"),
            Self::Gauss => f.write_str("gauss"),
            Self::Well => f.write_str("well"),
            Self::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

impl From<PotentialSpec> for String {
    fn from(p: PotentialSpec) -> String {
        p.to_string()
    }
}

impl FromStr for PotentialSpec {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "bump" => Ok(Self::Bump),
            "gauss" => Ok(Self::Gauss),
            "well" => Ok(Self::Well),
            _ => match s.strip_prefix("table:") {
                Some(p) if !p.is_empty() => Ok(Self::Table(PathBuf::from(p))),
                _ => Err(CliError::Validation(format!(
                    "unknown potential {s:?}; expected bump, gauss, well or table:PATH"
                ))),
            },
        }
    }
}

/// Flags shared by every subcommand. Each one overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// TOML file with any of the settings below.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// bump, gauss, well or table:PATH.
    #[arg(long, global = true)]
    pub potential: Option<String>,
    #[arg(long, global = true)]
    pub depth: Option<f64>,
    /// Support radius R.
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Particle mass m.
    #[arg(long, global = true)]
    pub mass: Option<f64>,
    /// Gauss-Legendre nodes on (0, R).
    #[arg(long, global = true)]
    pub grid_n: Option<usize>,
    /// Largest alpha used in continuation fits.
    #[arg(long, global = true)]
    pub alpha_max: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Tolerance for |a| = 0, relative to mu0.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

/// The config file. Every key is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub potential: Option<String>,
    pub depth: Option<f64>,
    pub radius: Option<f64>,
    pub mass: Option<f64>,
    pub grid_n: Option<usize>,
    pub alpha_max: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Validation(format!("cannot read config {}: {e}", path.display()))
        })?;
        let mut cfg: Self = toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))?;
        // table paths in a config file are relative to the file
        if let (Some(p), Some(dir)) = (&cfg.potential, path.parent()) {
            if let Ok(PotentialSpec::Table(t)) = p.parse() {
                if t.is_relative() {
                    cfg.potential = Some(format!("table:{}", dir.join(t).display()));
                }
            }
        }
        Ok(cfg)
    }
}

/// Validated settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub potential: PotentialSpec,
    pub depth: f64,
    pub radius: f64,
    pub mass: f64,
    pub grid_n: usize,
    pub alpha_max: f64,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            potential: PotentialSpec::Bump,
            depth: 1.0,
            radius: 1.0,
            mass: 1.0,
            grid_n: 200,
            alpha_max: 0.05,
            format: Format::Csv,
            out: None,
            tol: herbst_core::threshold::A_ZERO_REL_TOL,
        }
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Validation(msg()))
    }
}

impl RunConfig {
    /// Defaults, then the config file, then flags.
    pub fn resolve(flags: &Overrides) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let d = Self::default();
        let potential = match flags.potential.as_ref().or(file.potential.as_ref()) {
            Some(s) => s.parse()?,
            None => d.potential,
        };
        let cfg = Self {
            potential,
            depth: flags.depth.or(file.depth).unwrap_or(d.depth),
            radius: flags.radius.or(file.radius).unwrap_or(d.radius),
            mass: flags.mass.or(file.mass).unwrap_or(d.mass),
            grid_n: flags.grid_n.or(file.grid_n).unwrap_or(d.grid_n),
            alpha_max: flags.alpha_max.or(file.alpha_max).unwrap_or(d.alpha_max),
            format: flags.format.or(file.format).unwrap_or(d.format),
            out: flags.out.clone().or(file.out),
            tol: flags.tol.or(file.tol).unwrap_or(d.tol),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        check(self.depth >= 0.0 && self.depth.is_finite(), || {
            format!("depth must be finite and >= 0, got {}", self.depth)
        })?;
        check(self.radius > 0.0 && self.radius.is_finite(), || {
            format!("radius must be finite and > 0, got {}", self.radius)
        })?;
        check(self.mass > 0.0 && self.mass.is_finite(), || {
            format!("mass must be finite and > 0, got {}", self.mass)
        })?;
        check((4..=4000).contains(&self.grid_n), || {
            format!("grid_n must lie in [4, 4000], got {}", self.grid_n)
        })?;
        check(
            self.alpha_max > 0.0 && self.alpha_max * self.alpha_max < self.mass,
            || {
                format!(
                    "alpha_max must satisfy 0 < alpha_max^2 < mass, got {}",
                    self.alpha_max
                )
            },
        )?;
        check(self.tol > 0.0 && self.tol < 1.0, || {
            format!("tol must lie in (0, 1), got {}", self.tol)
        })
    }

    pub fn build_potential(&self) -> Result<RadialPotential, CliError> {
        let (d, r) = (self.depth, self.radius);
        Ok(match &self.potential {
            PotentialSpec::Bump => RadialPotential::bump(d, r)?,
            PotentialSpec::Gauss => RadialPotential::truncated_gaussian(d, r)?,
            PotentialSpec::Well => RadialPotential::square_well_smoothed(d, r)?,
            // a table carries its own depth and support
            PotentialSpec::Table(p) => RadialPotential::tabulated(Table::from_file(p)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_specs_parse() {
        assert_eq!(
            "bump".parse::<PotentialSpec>().unwrap(),
            PotentialSpec::Bump
        );
        assert_eq!(
            "table:a/b.txt".parse::<PotentialSpec>().unwrap(),
            PotentialSpec::Table(PathBuf::from("a/b.txt"))
        );
        assert!("table:".parse::<PotentialSpec>().is_err());
        assert!("square".parse::<PotentialSpec>().is_err());
        assert_eq!(PotentialSpec::Well.to_string(), "well");
    }

    #[test]
    fn flags_override_defaults() {
        let flags = Overrides {
            depth: Some(2.0),
            grid_n: Some(50),
            ..Overrides::default()
        };
        let cfg = RunConfig::resolve(&flags).unwrap();
        assert_eq!(cfg.depth, 2.0);
        assert_eq!(cfg.grid_n, 50);
        assert_eq!(cfg.mass, 1.0);
    }

    #[test]
    fn validation_rejects_bad_values() {
        for cfg in [
            RunConfig {
                mass: 0.0,
                ..RunConfig::default()
            },
            RunConfig {
                depth: -1.0,
                ..RunConfig::default()
            },
            RunConfig {
                grid_n: 2,
                ..RunConfig::default()
            },
            RunConfig {
                alpha_max: 2.0,
                ..RunConfig::default()
            },
            RunConfig {
                tol: 0.0,
                ..RunConfig::default()
            },
        ] {
            assert!(
                matches!(cfg.validate(), Err(CliError::Validation(_))),
                "{cfg:?}"
            );
        }
    }
}
