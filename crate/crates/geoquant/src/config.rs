//! Run configuration: command-line flags layered over an optional TOML file.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use geoquant_core::Tolerances;
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Demo {
    PrequantFlat,
    WeilSphere,
    Cylinder,
    Fock,
    Spin,
    Canonical,
    Bks,
}

impl Demo {
    pub fn id(self) -> &'static str {
        match self {
            Demo::PrequantFlat => "prequant-flat",
            Demo::WeilSphere => "weil-sphere",
            Demo::Cylinder => "cylinder",
            Demo::Fock => "fock",
            Demo::Spin => "spin",
            Demo::Canonical => "canonical",
            Demo::Bks => "bks",
        }
    }
}

impl fmt::Display for Demo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    /// Aligned human-readable table.
    Text,
    /// Key/value document with fixed field order and float formatting.
    #[default]
    Structured,
}

/// Grid size `N` or `NxM`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSize {
    pub first: usize,
    pub second: usize,
}

impl GridSize {
    pub const fn square(n: usize) -> Self {
        Self {
            first: n,
            second: n,
        }
    }
}

impl fmt::Display for GridSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.first, self.second)
    }
}

impl std::str::FromStr for GridSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("expected N or NxM, got `{s}`"))
        };
        match s.split_once(['x', 'X']) {
            Some((a, b)) => Ok(Self {
                first: parse(a)?,
                second: parse(b)?,
            }),
            None => {
                let n = parse(s)?;
                Ok(Self::square(n))
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config error: field `{field}`: {message}")]
    Invalid {
        field: &'static str,
        message: String,
    },
    #[error("config error: cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config error: {path}: {message}")]
    Parse { path: PathBuf, message: String },
}

fn invalid(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field,
        message: message.into(),
    }
}

/// Command-line interface.
#[derive(Debug, Parser)]
#[command(
    name = "geoquant",
    version,
    allow_negative_numbers = true,
    about = "Geometric-quantization demos with machine-checkable reports"
)]
pub struct Cli {
    /// Demo to run; may also come from the config file.
    #[arg(value_enum)]
    pub demo: Option<Demo>,
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Phase-space dimension (fock) or sector (spin, weil-sphere).
    #[arg(long)]
    pub n: Option<u32>,
    /// Holonomy parameter of the cylinder sector.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Truncation degree of the Fock basis.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Grid size, `N` or `NxM`.
    #[arg(long)]
    pub grid: Option<GridSize>,
    #[arg(long)]
    pub mass: Option<f64>,
    /// Largest Fourier mode (cylinder) or plane-wave number (bks).
    #[arg(long)]
    pub k_max: Option<u32>,
    /// Comma-separated small times for the bks extrapolation.
    #[arg(long, value_delimiter = ',')]
    pub t_list: Option<Vec<f64>>,
    /// Write the report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file with any of the settings above plus a `[tolerances]` table.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub report_format: Option<ReportFormat>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    demo: Option<Demo>,
    hbar: Option<f64>,
    n: Option<u32>,
    lambda: Option<f64>,
    degree: Option<u32>,
    grid: Option<String>,
    mass: Option<f64>,
    k_max: Option<u32>,
    t_list: Option<Vec<f64>>,
    out: Option<PathBuf>,
    report_format: Option<ReportFormat>,
    #[serde(default)]
    tolerances: ToleranceOverrides,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub grid: Option<f64>,
    pub exact: Option<f64>,
    pub bks: Option<f64>,
    pub quadrature: Option<f64>,
    pub parseval: Option<f64>,
}

/// Fully resolved and validated settings for one demo run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub demo: Demo,
    pub hbar: f64,
    pub n: u32,
    pub lambda: f64,
    pub degree: u32,
    pub grid: GridSize,
    pub mass: f64,
    pub k_max: u32,
    pub t_list: Vec<f64>,
    pub tolerances: Tolerances,
    pub out: Option<PathBuf>,
    pub report_format: ReportFormat,
}

/// Largest grid accepted per axis; keeps every demo at desk scale.
pub const MAX_GRID_POINTS: usize = 2048;

impl RunConfig {
    /// Defaults for `demo` with nothing overridden.
    pub fn defaults(demo: Demo) -> Self {
        let grid = match demo {
            Demo::PrequantFlat => GridSize::square(128),
            _ => GridSize::square(256),
        };
        Self {
            demo,
            hbar: 1.0,
            n: 1,
            lambda: 0.5,
            degree: 5,
            grid,
            mass: 1.0,
            k_max: if demo == Demo::Bks { 3 } else { 1 },
            t_list: geoquant_core::bks::default_t_list(),
            tolerances: Tolerances::DEFAULT,
            out: None,
            report_format: ReportFormat::Structured,
        }
    }

    /// Merges `cli` over the file named by `cli.config`, then validates.
    pub fn resolve(cli: &Cli) -> Result<Self, ConfigError> {
        let file = match &cli.config {
            Some(path) => load_file(path)?,
            None => FileConfig::default(),
        };
        let demo = cli.demo.or(file.demo).ok_or_else(|| {
            invalid(
                "demo",
                "no demo given on the command line or in the config file",
            )
        })?;
        let mut cfg = Self::defaults(demo);
        let file_grid = file
            .grid
            .as_deref()
            .map(str::parse::<GridSize>)
            .transpose()
            .map_err(|m| invalid("grid", m))?;

        macro_rules! layer {
            ($field:ident) => {
                if let Some(v) = cli.$field.clone().or(file.$field.clone()) {
                    cfg.$field = v;
                }
            };
        }
        layer!(hbar);
        layer!(n);
        layer!(lambda);
        layer!(degree);
        layer!(mass);
        layer!(k_max);
        layer!(t_list);
        layer!(report_format);
        if let Some(g) = cli.grid.or(file_grid) {
            cfg.grid = g;
        }
        cfg.out = cli.out.clone().or(file.out);

        let t = &mut cfg.tolerances;
        let o = file.tolerances;
        for (slot, value, field) in [
            (&mut t.grid, o.grid, "tolerances.grid"),
            (&mut t.exact, o.exact, "tolerances.exact"),
            (&mut t.bks, o.bks, "tolerances.bks"),
            (&mut t.quadrature, o.quadrature, "tolerances.quadrature"),
            (&mut t.parseval, o.parseval, "tolerances.parseval"),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(invalid(
                        field,
                        format!("must be positive and finite, got {v}"),
                    ));
                }
                *slot = v;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every parameter the selected demo uses.
    pub fn validate(&self) -> Result<(), ConfigError> {
        positive("hbar", self.hbar)?;
        positive("mass", self.mass)?;
        match self.demo {
            Demo::PrequantFlat => {
                self.check_grid(geoquant_core::prequant::MIN_PHASE_POINTS.max(17), true)?
            }
            Demo::WeilSphere => {
                if self.n == 0 {
                    return Err(invalid("n", "the sphere needs n >= 1 (s = n hbar / 2 > 0)"));
                }
            }
            Demo::Cylinder => {
                if !(0.0..1.0).contains(&self.lambda) {
                    return Err(invalid(
                        "lambda",
                        format!("must lie in [0, 1), got {}", self.lambda),
                    ));
                }
                if self.k_max > 1000 {
                    return Err(invalid(
                        "k_max",
                        format!("at most 1000, got {}", self.k_max),
                    ));
                }
            }
            Demo::Fock => {
                if !(1..=8).contains(&self.n) {
                    return Err(invalid(
                        "n",
                        format!("Fock dimension must be 1..=8, got {}", self.n),
                    ));
                }
                if self.degree > geoquant_core::fock::MAX_DEGREE {
                    return Err(invalid(
                        "degree",
                        format!(
                            "at most {}, got {}",
                            geoquant_core::fock::MAX_DEGREE,
                            self.degree
                        ),
                    ));
                }
            }
            Demo::Spin => {
                if self.n > geoquant_core::spin::MAX_SECTOR {
                    return Err(invalid(
                        "n",
                        format!(
                            "spin sector must be at most {}, got {}",
                            geoquant_core::spin::MAX_SECTOR,
                            self.n
                        ),
                    ));
                }
            }
            Demo::Canonical => {
                self.check_grid(geoquant_core::halfform::MIN_CONFIG_POINTS, false)?
            }
            Demo::Bks => {
                self.check_grid(geoquant_core::halfform::MIN_CONFIG_POINTS, false)?;
                let len = self.t_list.len();
                if !(geoquant_core::bks::MIN_T_VALUES..=geoquant_core::bks::MAX_T_VALUES)
                    .contains(&len)
                {
                    return Err(invalid("t_list", format!("need 4 to 8 values, got {len}")));
                }
                for (i, t) in self.t_list.iter().enumerate() {
                    if !(t.is_finite() && *t > 0.0 && *t <= 0.1) {
                        return Err(invalid(
                            "t_list",
                            format!("values must lie in (0, 0.1], got {t}"),
                        ));
                    }
                    if self.t_list[..i].contains(t) {
                        return Err(invalid("t_list", format!("duplicate value {t}")));
                    }
                }
                if !(1..=8).contains(&self.k_max) {
                    return Err(invalid(
                        "k_max",
                        format!(
                            "plane-wave numbers run 1..=k_max with k_max in 1..=8, got {}",
                            self.k_max
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_grid(&self, min: usize, two_axes: bool) -> Result<(), ConfigError> {
        let GridSize { first, second } = self.grid;
        for v in if two_axes {
            vec![first, second]
        } else {
            vec![first]
        } {
            if !(min..=MAX_GRID_POINTS).contains(&v) {
                return Err(invalid(
                    "grid",
                    format!(
                        "points per axis must lie in {min}..={MAX_GRID_POINTS}, got {}",
                        self.grid
                    ),
                ));
            }
        }
        if !two_axes && first != second {
            return Err(invalid(
                "grid",
                format!(
                    "the {} demo uses a 1D grid; give N, got {}",
                    self.demo, self.grid
                ),
            ));
        }
        Ok(())
    }
}

fn positive(field: &'static str, x: f64) -> Result<(), ConfigError> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(invalid(
            field,
            format!("must be positive and finite, got {x}"),
        ))
    }
}

fn load_file(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| ConfigError::Parse {
        path: path.to_path_buf(),
        message: e.message().to_string(),
    })
}
