//! Run configuration: defaults, then a TOML file, then command-line flags.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

use qrefl_core::{FitWindow, Parity, PotentialModel, SolverOptions, TabulatedPotential};

use crate::error::{CliError, CliResult};

/// Mass of (anti)hydrogen in electron masses.
pub const ANTIHYDROGEN_MASS_AU: f64 = 1837.15;
/// 1 neV in hartree.
pub const NEV_IN_HARTREE: f64 = 3.674_932_2e-11;

/// Options shared by all subcommands. Every field may also be set in the config file.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    /// Potential model: v4, v3, he, sio2 or table:<path>
    #[arg(long, global = true)]
    pub model: Option<String>,
    /// Van der Waals length ℓ3 in bohr (overrides the model default)
    #[arg(long, global = true)]
    pub ell3: Option<f64>,
    /// Retarded length ℓ4 in bohr (overrides the model default)
    #[arg(long, global = true)]
    pub ell4: Option<f64>,
    #[arg(long = "k-ell4-min", global = true)]
    pub k_ell4_min: Option<f64>,
    #[arg(long = "k-ell4-max", global = true)]
    pub k_ell4_max: Option<f64>,
    /// Single evaluation point kℓ4 (replaces the grid)
    #[arg(long = "k-ell4", global = true)]
    pub k_ell4: Option<f64>,
    /// Single evaluation point given as a kinetic energy in neV
    #[arg(long = "energy-nev", global = true)]
    pub energy_nev: Option<f64>,
    /// Particle mass in electron masses, used with --energy-nev
    #[arg(long = "mass-au", global = true)]
    pub mass_au: Option<f64>,
    /// Number of grid points
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// Fit parity: full or even
    #[arg(long, global = true)]
    pub parity: Option<String>,
    /// Relative tolerance of the reflection solver
    #[arg(long = "rel-tol", global = true)]
    pub rel_tol: Option<f64>,
    /// Output directory; artifacts go to stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format of the main artifact: csv or json
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[arg(long = "zbold-min", global = true, allow_hyphen_values = true)]
    pub zbold_min: Option<f64>,
    #[arg(long = "zbold-max", global = true, allow_hyphen_values = true)]
    pub zbold_max: Option<f64>,
    /// Report the evenness defect of the transformed potential and fail above 1e-8
    #[arg(long = "check-even", global = true)]
    #[serde(default)]
    pub check_even: bool,
    /// TOML file with any of the options above (flags take precedence)
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Flags {
    fn or(self, base: Flags) -> Flags {
        Flags {
            model: self.model.or(base.model),
            ell3: self.ell3.or(base.ell3),
            ell4: self.ell4.or(base.ell4),
            k_ell4_min: self.k_ell4_min.or(base.k_ell4_min),
            k_ell4_max: self.k_ell4_max.or(base.k_ell4_max),
            k_ell4: self.k_ell4.or(base.k_ell4),
            energy_nev: self.energy_nev.or(base.energy_nev),
            mass_au: self.mass_au.or(base.mass_au),
            points: self.points.or(base.points),
            parity: self.parity.or(base.parity),
            rel_tol: self.rel_tol.or(base.rel_tol),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            zbold_min: self.zbold_min.or(base.zbold_min),
            zbold_max: self.zbold_max.or(base.zbold_max),
            check_even: self.check_even || base.check_even,
            config: self.config,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelSpec {
    V4,
    V3,
    He,
    Sio2,
    Table(PathBuf),
}

impl ModelSpec {
    pub fn parse(s: &str) -> CliResult<Self> {
        Ok(match s.trim() {
            "v4" => ModelSpec::V4,
            "v3" => ModelSpec::V3,
            "he" => ModelSpec::He,
            "sio2" => ModelSpec::Sio2,
            other => match other.strip_prefix("table:") {
                Some(p) if !p.is_empty() => ModelSpec::Table(PathBuf::from(p)),
                _ => return Err(CliError::Config(format!("unknown model '{other}' (expected v4, v3, he, sio2 or table:<path>)"))),
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Fully resolved configuration, echoed into every output header.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub model: ModelSpec,
    pub ell3: Option<f64>,
    pub ell4: Option<f64>,
    pub k_ell4_min: f64,
    pub k_ell4_max: f64,
    pub points: usize,
    pub k_ell4: Option<f64>,
    pub energy_nev: Option<f64>,
    pub mass_au: f64,
    pub parity: String,
    pub rel_tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub zbold_min: f64,
    pub zbold_max: f64,
    pub check_even: bool,
}

fn read_file_config(path: &Path) -> CliResult<Flags> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

impl RunConfig {
    /// Resolves flags over the optional config file over per-command defaults.
    pub fn resolve(command: &str, flags: Flags, default_points: usize) -> CliResult<Self> {
        let file = match &flags.config {
            Some(p) => read_file_config(p)?,
            None => Flags::default(),
        };
        let f = flags.or(file);
        let window = FitWindow::default();
        let format = match f.format.as_deref().unwrap_or("csv") {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => return Err(CliError::Config(format!("unknown format '{other}' (expected csv or json)"))),
        };
        let parity = f.parity.unwrap_or_else(|| "full".into());
        parse_parity(&parity)?;
        let cfg = RunConfig {
            command: command.into(),
            model: ModelSpec::parse(f.model.as_deref().unwrap_or("he"))?,
            ell3: f.ell3,
            ell4: f.ell4,
            k_ell4_min: f.k_ell4_min.unwrap_or(window.k_ell4_min),
            k_ell4_max: f.k_ell4_max.unwrap_or(window.k_ell4_max),
            points: f.points.unwrap_or(default_points),
            k_ell4: f.k_ell4,
            energy_nev: f.energy_nev,
            mass_au: f.mass_au.unwrap_or(ANTIHYDROGEN_MASS_AU),
            parity,
            rel_tol: f.rel_tol.unwrap_or(SolverOptions::default().rel_tol),
            out: f.out,
            format,
            zbold_min: f.zbold_min.unwrap_or(-10.0),
            zbold_max: f.zbold_max.unwrap_or(10.0),
            check_even: f.check_even,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> CliResult<()> {
        if self.k_ell4.is_some() && self.energy_nev.is_some() {
            return Err(CliError::Config("--k-ell4 and --energy-nev are mutually exclusive".into()));
        }
        if let Some(e) = self.energy_nev {
            if !(e > 0.0 && e.is_finite()) {
                return Err(CliError::Config(format!("energy must be positive, got {e}")));
            }
        }
        if !(self.mass_au > 0.0) {
            return Err(CliError::Config(format!("mass must be positive, got {}", self.mass_au)));
        }
        if self.points == 0 {
            return Err(CliError::Config("points must be at least 1".into()));
        }
        if !(self.zbold_min < self.zbold_max) {
            return Err(CliError::Config("zbold-min must be below zbold-max".into()));
        }
        self.window().validate()?;
        self.solver_options().validate()?;
        Ok(())
    }

    pub fn window(&self) -> FitWindow {
        FitWindow { k_ell4_min: self.k_ell4_min, k_ell4_max: self.k_ell4_max, points: self.points }
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions { rel_tol: self.rel_tol, ..SolverOptions::default() }
    }

    pub fn parity(&self) -> Parity {
        parse_parity(&self.parity).expect("validated at resolve time")
    }

    /// Builds the potential; table files are read here.
    pub fn build_model(&self) -> CliResult<PotentialModel> {
        let he = qrefl_core::potentials::HELIUM;
        let si = qrefl_core::potentials::SILICA;
        let m = match &self.model {
            ModelSpec::V4 => PotentialModel::v4(self.ell4.unwrap_or(he.1))?,
            ModelSpec::V3 => PotentialModel::homogeneous(3, self.ell3.unwrap_or(he.0))?,
            ModelSpec::He => PotentialModel::interpolated(self.ell3.unwrap_or(he.0), self.ell4.unwrap_or(he.1))?,
            ModelSpec::Sio2 => PotentialModel::interpolated(self.ell3.unwrap_or(si.0), self.ell4.unwrap_or(si.1))?,
            ModelSpec::Table(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                let table = TabulatedPotential::parse(&text)
                    .and_then(|t| t.with_length_scales(self.ell3, self.ell4))
                    .map_err(|source| CliError::Table { path: path.clone(), source })?;
                PotentialModel::Tabulated(table)
            }
        };
        Ok(m)
    }

    /// Length used to make `k` dimensionless: `ℓ4`, or `ℓ3` for the pure `1/z³` model.
    pub fn reference_length(model: &PotentialModel) -> f64 {
        let s = model.length_scales();
        s.ell4.or(s.ell3).expect("every model kind carries a length scale")
    }

    /// Single wavevector requested by `--k-ell4` or `--energy-nev`, if any.
    pub fn single_k(&self, model: &PotentialModel) -> Option<f64> {
        if let Some(kl) = self.k_ell4 {
            return Some(kl / Self::reference_length(model));
        }
        self.energy_nev.map(|e| (2.0 * self.mass_au * e * NEV_IN_HARTREE).sqrt())
    }

    /// `k` grid, uniform in `kℓ4` on the window, or the single requested point.
    pub fn k_grid(&self, model: &PotentialModel) -> Vec<f64> {
        match self.single_k(model) {
            Some(k) => vec![k],
            None => {
                let l = Self::reference_length(model);
                self.window().grid().into_iter().map(|kl| kl / l).collect()
            }
        }
    }

    /// The configuration as `# `-prefixed TOML lines.
    pub fn header(&self, model: &PotentialModel) -> String {
        let mut h = format!("# qrefl {}\n# model: {}\n", qrefl_core::VERSION, model.describe());
        if matches!(self.model, ModelSpec::He | ModelSpec::Sio2) {
            h.push_str("# note: interpolated model potential with literature length scales, not an ab-initio potential\n");
        }
        let body = toml::to_string(self).expect("config serializes");
        for line in body.lines() {
            h.push_str("# ");
            h.push_str(line);
            h.push('\n');
        }
        h
    }
}

fn parse_parity(s: &str) -> CliResult<Parity> {
    match s {
        "full" => Ok(Parity::Full),
        "even" => Ok(Parity::Even),
        other => Err(CliError::Config(format!("unknown parity '{other}' (expected full or even)"))),
    }
}
