//! Run configuration: flat TOML with dotted keys.
//!
//! ```text
//! # every key is optional
//! params.chi1S = 6.49e-5
//! grid.L = 1.8
//! grid.nx = 900
//! time.t_end = 4000
//! init.phi_red = 0.1
//! outputs.formats = ["csv", "ppm"]
//! ```

use crate::error::{Error, Result};
use crate::experiments::DEFAULT_DISCARD_FRACTION;
use crate::params::{PhysicalParams, DEFAULT_GAMMA};
use crate::solver::{Grid1D, InitialCondition, RunSpec, StepControl};
use serde::Deserialize;
use std::path::{Path, PathBuf};

pub const DEFAULT_LENGTH: f64 = 1.8;
pub const DEFAULT_NX: usize = 900;
pub const DEFAULT_T_END: f64 = 4000.0;
pub const DEFAULT_SNAPSHOT_STRIDE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Ppm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub formats: Vec<OutputFormat>,
}

impl OutputConfig {
    pub fn wants(&self, format: OutputFormat) -> bool {
        self.formats.contains(&format)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: PhysicalParams,
    /// Channel length (cm).
    pub length: f64,
    pub nx: usize,
    pub t_end: f64,
    pub cfl: f64,
    pub snapshot_stride: usize,
    pub init: InitialCondition,
    pub outputs: OutputConfig,
    pub discard_fraction: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        parse_config("").expect("defaults are valid")
    }
}

impl RunConfig {
    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.length, self.nx).map_err(|e| rename(e, "grid"))
    }

    pub fn run_spec(&self) -> Result<RunSpec> {
        Ok(RunSpec {
            params: self.params,
            grid: self.grid()?,
            t_end: self.t_end,
            cfl: self.cfl,
            snapshot_stride: self.snapshot_stride,
            init: self.init,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate().map_err(|e| rename(e, "params"))?;
        for (name, v) in [("grid.L", self.length), ("time.cfl", self.cfl)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::invalid(name, format!("must be > 0, got {v}")));
            }
        }
        if !self.t_end.is_finite() || self.t_end < 0.0 {
            return Err(Error::invalid("time.t_end", format!("must be >= 0, got {}", self.t_end)));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::invalid("time.snapshot_stride", "must be >= 1"));
        }
        if !(0.0..1.0).contains(&self.discard_fraction) {
            return Err(Error::invalid(
                "tracking.discard_fraction",
                format!("must lie in [0, 1), got {}", self.discard_fraction),
            ));
        }
        self.init.validate()?;
        let grid = self.grid()?;
        StepControl::from_cfl(&self.params, &grid, self.cfl).map_err(|e| rename(e, "time"))?;
        Ok(())
    }
}

/// Prefixes a parameter name with its config section.
fn rename(err: Error, section: &str) -> Error {
    match err {
        Error::InvalidParameter { name, reason } if !name.contains('.') => Error::InvalidParameter {
            name: format!("{section}.{name}"),
            reason,
        },
        other => other,
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    params: RawParams,
    #[serde(default)]
    grid: RawGrid,
    #[serde(default)]
    time: RawTime,
    #[serde(default)]
    init: RawInit,
    #[serde(default)]
    outputs: RawOutputs,
    #[serde(default)]
    tracking: RawTracking,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    #[serde(rename = "D1")]
    d1: Option<f64>,
    #[serde(rename = "D2")]
    d2: Option<f64>,
    #[serde(rename = "DS")]
    ds: Option<f64>,
    #[serde(rename = "DN")]
    dn: Option<f64>,
    alpha: Option<f64>,
    gamma1: Option<f64>,
    gamma2: Option<f64>,
    #[serde(rename = "chi1S")]
    chi1_s: Option<f64>,
    #[serde(rename = "chi2S")]
    chi2_s: Option<f64>,
    #[serde(rename = "chi1N")]
    chi1_n: Option<f64>,
    #[serde(rename = "chi2N")]
    chi2_n: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    #[serde(rename = "L")]
    length: Option<f64>,
    nx: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTime {
    t_end: Option<f64>,
    cfl: Option<f64>,
    snapshot_stride: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInit {
    #[serde(rename = "M_total")]
    m_total: Option<f64>,
    phi_red: Option<f64>,
    ell0: Option<f64>,
    #[serde(rename = "N0")]
    n0: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutputs {
    directory: Option<PathBuf>,
    formats: Option<Vec<OutputFormat>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTracking {
    discard_fraction: Option<f64>,
}

/// Parses and validates configuration text. Missing keys take defaults.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| text[..s.start.min(text.len())].lines().count().max(1));
        let msg = e.message().replace('\n', " ");
        Error::Config(match line {
            Some(l) => format!("line {l}: {msg}"),
            None => msg,
        })
    })?;

    let init_default = InitialCondition::default();
    let init = InitialCondition {
        m_total: raw.init.m_total.unwrap_or(init_default.m_total),
        phi_red: raw.init.phi_red.unwrap_or(init_default.phi_red),
        ell0: raw.init.ell0.unwrap_or(init_default.ell0),
        n0: raw.init.n0.unwrap_or(init_default.n0),
    };
    let length = raw.grid.length.unwrap_or(DEFAULT_LENGTH);
    // Unset consumption rates keep gamma * M_total / L at its default value.
    let gamma = DEFAULT_GAMMA * (length / DEFAULT_LENGTH) / init.m_total;
    let t1 = PhysicalParams::table1();
    let p = raw.params;
    let params = PhysicalParams {
        d1: p.d1.unwrap_or(t1.d1),
        d2: p.d2.unwrap_or(t1.d2),
        ds: p.ds.unwrap_or(t1.ds),
        dn: p.dn.unwrap_or(t1.dn),
        alpha: p.alpha.unwrap_or(t1.alpha),
        gamma1: p.gamma1.unwrap_or(gamma),
        gamma2: p.gamma2.unwrap_or(gamma),
        chi1_s: p.chi1_s.unwrap_or(t1.chi1_s),
        chi2_s: p.chi2_s.unwrap_or(t1.chi2_s),
        chi1_n: p.chi1_n.unwrap_or(t1.chi1_n),
        chi2_n: p.chi2_n.unwrap_or(t1.chi2_n),
    };
    let config = RunConfig {
        params,
        length,
        nx: raw.grid.nx.unwrap_or(DEFAULT_NX),
        t_end: raw.time.t_end.unwrap_or(DEFAULT_T_END),
        cfl: raw.time.cfl.unwrap_or(StepControl::DEFAULT_CFL),
        snapshot_stride: raw.time.snapshot_stride.unwrap_or(DEFAULT_SNAPSHOT_STRIDE),
        init,
        outputs: OutputConfig {
            directory: raw.outputs.directory.unwrap_or_else(|| PathBuf::from(".")),
            formats: raw
                .outputs
                .formats
                .unwrap_or_else(|| vec![OutputFormat::Csv, OutputFormat::Ppm]),
        },
        discard_fraction: raw.tracking.discard_fraction.unwrap_or(DEFAULT_DISCARD_FRACTION),
    };
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}
