//! Experiment configuration: defaults, flat `key = value` config files, and
//! per-experiment validation. CLI flags override file values which override
//! defaults.

use std::fmt;
use std::path::PathBuf;

use friable_core::{Error, Result};

/// Lower limit of the admissible exponent range for `theta`.
pub const THETA_MIN: f64 = 17.0 / 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Count,
    Saddle,
    TheoremMain,
    Perron,
    Ftheta,
    Hildebrand,
    BoundaryExample,
    ExplicitPsi,
    DecayProfile,
    ExportContour,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Count => "count",
            Experiment::Saddle => "saddle",
            Experiment::TheoremMain => "theorem-main",
            Experiment::Perron => "perron",
            Experiment::Ftheta => "ftheta",
            Experiment::Hildebrand => "hildebrand",
            Experiment::BoundaryExample => "boundary-example",
            Experiment::ExplicitPsi => "explicit-psi",
            Experiment::DecayProfile => "decay-profile",
            Experiment::ExportContour => "export-contour",
        }
    }

    fn uses_contour(self) -> bool {
        matches!(
            self,
            Experiment::Perron | Experiment::Ftheta | Experiment::ExportContour
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Jsonl,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "jsonl" => Ok(ReportFormat::Jsonl),
            other => Err(Error::Domain(format!(
                "format must be csv or jsonl, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Jsonl => "jsonl",
        })
    }
}

/// Fully resolved experiment configuration.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub x: Option<u64>,
    pub y: Option<u64>,
    pub h: Option<u64>,
    pub eps: f64,
    pub big_h: f64,
    pub theta: f64,
    pub grid: Option<PathBuf>,
    pub zeros: Option<PathBuf>,
    pub max_zeros: usize,
    pub cache: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: ReportFormat,
    pub workers: usize,
    pub seed: u64,
    pub t_grid: Vec<f64>,
    pub samples: usize,
    pub export_path: Option<PathBuf>,
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        ExperimentConfig {
            experiment,
            x: None,
            y: None,
            h: None,
            eps: 0.05,
            big_h: 1e4,
            theta: 0.7,
            grid: None,
            zeros: None,
            max_zeros: 2000,
            cache: None,
            output: None,
            format: ReportFormat::Csv,
            workers: 0,
            seed: 0,
            t_grid: vec![0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0],
            samples: 512,
            export_path: None,
            timing: false,
        }
    }

    /// Apply one `key = value` assignment from a config file or flag layer.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |k: &str, v: &str| Error::Domain(format!("invalid value for {k}: {v:?}"));
        match key {
            "x" => self.x = Some(value.parse().map_err(|_| bad(key, value))?),
            "y" => self.y = Some(value.parse().map_err(|_| bad(key, value))?),
            "h" => self.h = Some(value.parse().map_err(|_| bad(key, value))?),
            "eps" => self.eps = value.parse().map_err(|_| bad(key, value))?,
            "H" => self.big_h = value.parse().map_err(|_| bad(key, value))?,
            "theta" => self.theta = value.parse().map_err(|_| bad(key, value))?,
            "grid" => self.grid = Some(PathBuf::from(value)),
            "zeros" => self.zeros = Some(PathBuf::from(value)),
            "max_zeros" => self.max_zeros = value.parse().map_err(|_| bad(key, value))?,
            "cache" => self.cache = Some(PathBuf::from(value)),
            "output" => self.output = Some(PathBuf::from(value)),
            "format" => self.format = ReportFormat::parse(value)?,
            "workers" => self.workers = value.parse().map_err(|_| bad(key, value))?,
            "seed" => self.seed = value.parse().map_err(|_| bad(key, value))?,
            "t_grid" => self.t_grid = parse_t_grid(value)?,
            "samples" => self.samples = value.parse().map_err(|_| bad(key, value))?,
            "export_path" => self.export_path = Some(PathBuf::from(value)),
            "timing" => self.timing = value.parse().map_err(|_| bad(key, value))?,
            other => {
                return Err(Error::Domain(format!("unknown config key {other:?}")));
            }
        }
        Ok(())
    }

    /// Read a flat `key = value` file into this config (comments with `#`).
    pub fn apply_file(&mut self, text: &str, origin: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Domain(format!("{origin}:{}: expected key = value", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::Domain(format!("{origin}:{}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    /// Effective configuration as `key = value` lines, for `--print-config`.
    pub fn print_lines(&self) -> Vec<String> {
        let opt_u = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        let opt_p = |v: &Option<PathBuf>| {
            v.as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default()
        };
        let grid_s: Vec<String> = self.t_grid.iter().map(|t| t.to_string()).collect();
        vec![
            format!("experiment = {}", self.experiment.name()),
            format!("x = {}", opt_u(self.x)),
            format!("y = {}", opt_u(self.y)),
            format!("h = {}", opt_u(self.h)),
            format!("eps = {}", self.eps),
            format!("H = {}", self.big_h),
            format!("theta = {}", self.theta),
            format!("grid = {}", opt_p(&self.grid)),
            format!("zeros = {}", opt_p(&self.zeros)),
            format!("max_zeros = {}", self.max_zeros),
            format!("cache = {}", opt_p(&self.cache)),
            format!("output = {}", opt_p(&self.output)),
            format!("format = {}", self.format),
            format!("workers = {}", self.workers),
            format!("seed = {}", self.seed),
            format!("t_grid = {}", grid_s.join(",")),
            format!("samples = {}", self.samples),
            format!("export_path = {}", opt_p(&self.export_path)),
            format!("timing = {}", self.timing),
        ]
    }

    /// Per-experiment validation with field names in every message.
    pub fn validate(&self) -> Result<()> {
        let need = |field: &str, present: bool| {
            if present {
                Ok(())
            } else {
                Err(Error::Domain(format!(
                    "missing required field \"{field}\" for experiment {}",
                    self.experiment.name()
                )))
            }
        };
        if !(self.theta > THETA_MIN && self.theta <= 1.0) {
            return Err(Error::Domain(format!(
                "field \"theta\" must lie in (17/30, 1], got {}",
                self.theta
            )));
        }
        if self.experiment.uses_contour() && !(self.eps > 0.0 && self.eps <= 0.2) {
            return Err(Error::Domain(format!(
                "field \"eps\" must lie in (0, 0.2] for contour experiments, got {}",
                self.eps
            )));
        }
        let has_grid = self.grid.is_some();
        match self.experiment {
            Experiment::Count | Experiment::TheoremMain => {
                need("x", self.x.is_some() || has_grid)?;
                need("y", self.y.is_some() || has_grid)?;
            }
            Experiment::Saddle | Experiment::DecayProfile => {
                need("x", self.x.is_some() || has_grid)?;
                need("y", self.y.is_some() || has_grid)?;
            }
            Experiment::Perron => {
                need("x", self.x.is_some() || has_grid)?;
                need("y", self.y.is_some() || has_grid)?;
                if !(self.big_h >= 2.0) {
                    return Err(Error::Domain(format!(
                        "field \"H\" must be >= 2, got {}",
                        self.big_h
                    )));
                }
            }
            Experiment::Ftheta => {
                need("x", self.x.is_some() || has_grid)?;
                need("y", self.y.is_some() || has_grid)?;
            }
            Experiment::Hildebrand => {
                need("x", self.x.is_some() || has_grid)?;
                need("y", self.y.is_some() || has_grid)?;
            }
            Experiment::BoundaryExample => need("x", self.x.is_some() || has_grid)?,
            Experiment::ExplicitPsi => {
                need("x", self.x.is_some() || has_grid)?;
                need("zeros", self.zeros.is_some())?;
            }
            Experiment::ExportContour => {
                need("x", self.x.is_some())?;
                need("y", self.y.is_some())?;
                need("export_path", self.export_path.is_some())?;
            }
        }
        Ok(())
    }
}

pub fn parse_t_grid(value: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for part in value.split(',') {
        let trimmed = part.trim();
        if trimmed.is_empty() {
            continue;
        }
        let v: f64 = trimmed
            .parse()
            .map_err(|_| Error::Domain(format!("invalid t_grid entry {trimmed:?}")))?;
        if !v.is_finite() {
            return Err(Error::Domain(format!("t_grid entry {v} not finite")));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(Error::Domain("t_grid is empty".into()));
    }
    Ok(out)
}

/// Parse a grid file of `x,y,h` triples (comments with `#`).
pub fn parse_grid(text: &str, origin: &str) -> Result<Vec<(u64, u64, u64)>> {
    let mut rows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::Dataset(format!(
                "{origin}:{}: expected x,y,h got {line:?}",
                lineno + 1
            )));
        }
        let parse = |i: usize, name: &str| -> Result<u64> {
            fields[i].parse().map_err(|_| {
                Error::Dataset(format!(
                    "{origin}:{}: invalid {name}: {:?}",
                    lineno + 1,
                    fields[i]
                ))
            })
        };
        rows.push((parse(0, "x")?, parse(1, "y")?, parse(2, "h")?));
    }
    if rows.is_empty() {
        return Err(Error::Dataset(format!("{origin}: no grid rows")));
    }
    Ok(rows)
}
