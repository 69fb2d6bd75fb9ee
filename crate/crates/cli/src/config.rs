//! Run configuration: a TOML file, command-line overrides, defaults and
//! per-mode validation.
//!
//! Every key is accepted only by the modes that use it; a key that the
//! selected mode would ignore is an error rather than a silent no-op.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use pftc_core::sweep::{Axis, AxisName, RunSettings, Sampling, SweepGrid};
use pftc_core::{AcFieldParams, Boundary, ChainParams, SaturationWindow};
use serde::{Deserialize, Serialize};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "PFTC_WORKERS";

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

impl ConfigError {
    fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

impl From<pftc_core::Error> for ConfigError {
    fn from(e: pftc_core::Error) -> Self {
        Self(e.to_string())
    }
}

type Result<T> = std::result::Result<T, ConfigError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Evolve,
    Ensemble,
    Sweep,
    QfiScaling,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Evolve => "evolve",
            Mode::Ensemble => "ensemble",
            Mode::Sweep => "sweep",
            Mode::QfiScaling => "qfi-scaling",
        }
    }

    fn default_realizations(&self) -> u64 {
        match self {
            Mode::Evolve => 1,
            Mode::Ensemble => 2000,
            Mode::Sweep => 250,
            Mode::QfiScaling => 1000,
        }
    }

    fn default_t_max(&self) -> u64 {
        match self {
            Mode::Evolve | Mode::Ensemble | Mode::QfiScaling => 1000,
            Mode::Sweep => 100_000,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Chain couplings with every key optional. `n` is signed so that a negative
/// size is reported as a range error instead of a type error.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainTable {
    pub n: Option<i64>,
    pub j1: Option<f64>,
    pub j2: Option<f64>,
    pub d: Option<f64>,
    pub h: Option<f64>,
    pub phi: Option<f64>,
    pub period: Option<f64>,
    pub boundary: Option<Boundary>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcTable {
    pub amplitude: Option<f64>,
    pub omega: Option<f64>,
    pub phase: Option<f64>,
}

/// A swept axis: either explicit `values` or `start`/`stop`/`count`
/// (inclusive linear spacing).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub name: AxisName,
    pub values: Option<Vec<f64>>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub count: Option<usize>,
}

impl AxisSpec {
    fn resolve(&self) -> Result<Axis> {
        let name = self.name.as_str();
        let values = match (&self.values, self.start, self.stop, self.count) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(start), Some(stop), Some(count)) => linspace(start, stop, count)
                .ok_or_else(|| ConfigError::new(format!("axis {name}: count must be at least 1")))?,
            _ => {
                return Err(ConfigError::new(format!(
                    "axis {name}: give either `values` or all of `start`, `stop`, `count`"
                )))
            }
        };
        Ok(Axis { name: self.name, values })
    }
}

impl FromStr for AxisSpec {
    type Err = ConfigError;

    /// `name=v1,v2,...` or `name=start:stop:count`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s
            .split_once('=')
            .ok_or_else(|| ConfigError::new(format!("axis `{s}`: expected NAME=VALUES or NAME=START:STOP:COUNT")))?;
        let name = AxisName::from_str(name.trim())?;
        let float = |t: &str| {
            t.trim().parse::<f64>().map_err(|_| ConfigError::new(format!("axis `{s}`: `{t}` is not a number")))
        };
        let parts: Vec<&str> = rest.split(':').collect();
        match parts.as_slice() {
            [start, stop, count] => {
                let count = count
                    .trim()
                    .parse()
                    .map_err(|_| ConfigError::new(format!("axis `{s}`: count `{count}` is not an integer")))?;
                Ok(Self { name, values: None, start: Some(float(start)?), stop: Some(float(stop)?), count: Some(count) })
            }
            [list] => {
                let values = list.split(',').map(float).collect::<Result<Vec<_>>>()?;
                Ok(Self { name, values: Some(values), start: None, stop: None, count: None })
            }
            _ => Err(ConfigError::new(format!("axis `{s}`: expected NAME=VALUES or NAME=START:STOP:COUNT"))),
        }
    }
}

/// `count` points from `start` to `stop` inclusive; the last point is `stop`
/// exactly.
pub fn linspace(start: f64, stop: f64, count: usize) -> Option<Vec<f64>> {
    match count {
        0 => None,
        1 => Some(vec![start]),
        _ => Some(
            (0..count)
                .map(|i| if i + 1 == count { stop } else { start + (stop - start) * i as f64 / (count - 1) as f64 })
                .collect(),
        ),
    }
}

/// Everything a config file or the command line may set. Unset keys take
/// defaults during resolution.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub mode: Option<Mode>,
    pub seed: Option<u64>,
    pub index: Option<u64>,
    pub realizations: Option<u64>,
    pub t_max: Option<u64>,
    pub stride: Option<u64>,
    pub epsilon: Option<f64>,
    pub initial_theta: Option<f64>,
    pub sampling: Option<Sampling>,
    pub output: Option<PathBuf>,
    pub workers: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Seconds between mid-cell checkpoint writes.
    pub checkpoint_interval: Option<f64>,
    pub write_series: Option<bool>,
    pub window: Option<SaturationWindow>,
    pub qfi: Option<bool>,
    pub chain: Option<ChainTable>,
    pub ac: Option<AcTable>,
    pub axes: Option<Vec<AxisSpec>>,
    pub sizes: Option<Vec<i64>>,
    pub disorders: Option<Vec<f64>>,
}

impl PartialConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| ConfigError::new(format!("invalid config: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| ConfigError::new(format!("{}: {}", path.display(), e.0)))
    }

    /// Overlay `other` on `self`; keys set in `other` win.
    pub fn merge(mut self, other: PartialConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            mode, seed, index, realizations, t_max, stride, epsilon, initial_theta, sampling, output, workers,
            checkpoint, checkpoint_interval, write_series, window, qfi, axes, sizes, disorders
        );
        if let Some(c) = other.chain {
            let mut base = self.chain.take().unwrap_or_default();
            macro_rules! chain {
                ($($f:ident),*) => { $( if c.$f.is_some() { base.$f = c.$f; } )* };
            }
            chain!(n, j1, j2, d, h, phi, period, boundary);
            self.chain = Some(base);
        }
        if let Some(a) = other.ac {
            let mut base = self.ac.take().unwrap_or_default();
            if a.amplitude.is_some() {
                base.amplitude = a.amplitude;
            }
            if a.omega.is_some() {
                base.omega = a.omega;
            }
            if a.phase.is_some() {
                base.phase = a.phase;
            }
            self.ac = Some(base);
        }
        self
    }

    fn present_keys(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        macro_rules! probe {
            ($($f:ident),*) => { $( if self.$f.is_some() { keys.push(stringify!($f)); } )* };
        }
        probe!(
            index, realizations, workers, checkpoint, checkpoint_interval, write_series, window, axes, sizes,
            disorders
        );
        keys
    }

    /// Apply defaults, check mode/key compatibility and validate values.
    pub fn resolve(self, mode: Mode) -> Result<RunConfig> {
        if let Some(m) = self.mode {
            if m != mode {
                return Err(ConfigError::new(format!("config is for mode `{m}` but `{mode}` was requested")));
            }
        }
        let allowed: &[&str] = match mode {
            Mode::Evolve => &["index"],
            Mode::Ensemble => &["realizations", "workers", "window"],
            Mode::Sweep => {
                &["realizations", "workers", "window", "axes", "checkpoint", "checkpoint_interval", "write_series"]
            }
            Mode::QfiScaling => {
                &["realizations", "workers", "window", "sizes", "disorders", "checkpoint", "checkpoint_interval"]
            }
        };
        if let Some(key) = self.present_keys().into_iter().find(|k| !allowed.contains(k)) {
            return Err(ConfigError::new(format!("`{key}` is not used by mode `{mode}`")));
        }

        let chain = resolve_chain(self.chain.unwrap_or_default())?;
        let track_qfi = match (mode, self.qfi) {
            (Mode::QfiScaling, Some(false)) => {
                return Err(ConfigError::new("mode `qfi-scaling` always tracks the QFI; drop `qfi = false`"))
            }
            (Mode::QfiScaling, _) => true,
            (_, Some(q)) => q,
            (_, None) => self.ac.is_some(),
        };
        if !track_qfi && self.ac.is_some() {
            return Err(ConfigError::new("`ac` is set but `qfi = false`; the AC field only enters the QFI run"));
        }
        let ac = track_qfi.then(|| {
            let a = self.ac.unwrap_or_default();
            AcFieldParams {
                amplitude: a.amplitude.unwrap_or(0.0),
                omega: a.omega.unwrap_or(PI / chain.period),
                phase: a.phase.unwrap_or(0.0),
            }
        });

        let settings = RunSettings {
            t_max: self.t_max.unwrap_or(mode.default_t_max()),
            stride: self.stride.unwrap_or(1),
            initial_theta: self.initial_theta.unwrap_or(PI / 16.0),
            epsilon: self.epsilon.unwrap_or(1e-2),
            sampling: self.sampling.unwrap_or_default(),
            ac,
        };
        settings.validate()?;

        let axes = match mode {
            Mode::Sweep => {
                let specs = self.axes.ok_or_else(|| ConfigError::new("mode `sweep` needs at least one axis"))?;
                if specs.is_empty() {
                    return Err(ConfigError::new("mode `sweep` needs at least one axis"));
                }
                specs.iter().map(AxisSpec::resolve).collect::<Result<Vec<_>>>()?
            }
            Mode::QfiScaling => {
                let sizes = self.sizes.ok_or_else(|| ConfigError::new("mode `qfi-scaling` needs `sizes`"))?;
                if let Some(&bad) = sizes.iter().find(|&&n| n < 1) {
                    return Err(ConfigError::new(format!("sizes: {bad} is not a positive site count")));
                }
                let mut axes = vec![Axis { name: AxisName::N, values: sizes.iter().map(|&n| n as f64).collect() }];
                if let Some(h) = self.disorders {
                    axes.push(Axis { name: AxisName::H, values: h });
                }
                axes
            }
            _ => Vec::new(),
        };

        let realizations = self.realizations.unwrap_or(mode.default_realizations());
        let seed = self.seed.unwrap_or(0);
        let grid = SweepGrid { axes, base: chain, settings, realizations, seed, window: self.window };
        if mode == Mode::Evolve {
            grid.settings.validate()?;
            chain.validate()?;
        } else {
            grid.validate()?;
        }

        let checkpoint_interval = match self.checkpoint_interval {
            Some(s) if !s.is_finite() || s < 0.0 => {
                return Err(ConfigError::new(format!("checkpoint_interval must be non-negative seconds, got {s}")))
            }
            Some(s) => Duration::from_secs_f64(s),
            None => Duration::from_secs(60),
        };
        let workers = match self.workers {
            Some(w) => w,
            None => workers_from_env()?,
        };

        Ok(RunConfig {
            mode,
            grid,
            index: self.index.unwrap_or(0),
            write_series: self.write_series.unwrap_or(mode == Mode::QfiScaling),
            output: self.output.unwrap_or_else(|| PathBuf::from("out")),
            workers,
            checkpoint: self.checkpoint,
            checkpoint_interval,
        })
    }
}

fn workers_from_env() -> Result<usize> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| ConfigError::new(format!("{WORKERS_ENV}={v} is not a non-negative integer"))),
        _ => Ok(0),
    }
}

fn resolve_chain(t: ChainTable) -> Result<ChainParams> {
    let d = ChainParams::default();
    let n = match t.n {
        None => d.n,
        Some(n) if n < 1 => return Err(ConfigError::new(format!("chain.n must be a positive site count, got {n}"))),
        Some(n) => n as usize,
    };
    let p = ChainParams {
        n,
        j1: t.j1.unwrap_or(d.j1),
        j2: t.j2.unwrap_or(d.j2),
        d: t.d.unwrap_or(d.d),
        h: t.h.unwrap_or(d.h),
        phi: t.phi.unwrap_or(d.phi),
        period: t.period.unwrap_or(d.period),
        boundary: t.boundary.unwrap_or_default(),
    };
    p.validate()?;
    Ok(p)
}

/// A fully resolved run.
///
/// `grid` carries the physics; for `evolve` and `ensemble` it has no axes.
/// The remaining fields only steer execution and never change results.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub grid: SweepGrid,
    /// Realization index simulated by `evolve`.
    pub index: u64,
    /// Write one series file per sweep cell.
    pub write_series: bool,
    pub output: PathBuf,
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_interval: Duration,
}

/// The result-determining part of a [`RunConfig`], written into every output
/// preamble.
#[derive(Debug, Serialize)]
struct Provenance<'a> {
    mode: Mode,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    realizations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<SaturationWindow>,
    run: &'a RunSettings,
    chain: &'a ChainParams,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    axes: &'a [Axis],
}

impl RunConfig {
    /// Canonical TOML rendering of everything that determines the results.
    pub fn provenance_toml(&self) -> String {
        let evolve = self.mode == Mode::Evolve;
        let p = Provenance {
            mode: self.mode,
            seed: self.grid.seed,
            index: evolve.then_some(self.index),
            realizations: (!evolve).then_some(self.grid.realizations),
            window: (!evolve).then(|| self.grid.window()),
            run: &self.grid.settings,
            chain: &self.grid.base,
            axes: &self.grid.axes,
        };
        toml::to_string(&p).expect("provenance serializes")
    }
}
