use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pftc_cli::config::{AcTable, AxisSpec, ChainTable, ConfigError, Mode, PartialConfig};
use pftc_cli::{execute, CliError};
use pftc_core::sweep::Sampling;
use pftc_core::SaturationWindow;

/// Kicked disordered spin chains: Floquet time-crystal dynamics and AC-field
/// quantum Fisher information.
#[derive(Parser)]
#[command(name = "pftc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One disorder realization.
    Evolve(Flags),
    /// Disorder-averaged series.
    Ensemble(Flags),
    /// One- or two-axis parameter sweep with a lifetime/saturation map.
    Sweep(Flags),
    /// QFI ratio versus chain size (and optionally disorder).
    #[command(name = "qfi-scaling")]
    QfiScaling(Flags),
}

#[derive(clap::Args)]
struct Flags {
    /// TOML configuration file; flags override its values.
    #[arg(long, short)]
    config: Option<PathBuf>,

    /// Number of sites.
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    j1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    j2: Option<f64>,
    /// Dzyaloshinskii-Moriya strength.
    #[arg(long = "d", allow_hyphen_values = true)]
    d: Option<f64>,
    /// Disorder half-width.
    #[arg(long = "h", allow_hyphen_values = true)]
    h: Option<f64>,
    /// Kick angle (radians).
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// Drive period.
    #[arg(long, allow_hyphen_values = true)]
    period: Option<f64>,

    /// Track the QFI with respect to the AC amplitude.
    #[arg(long)]
    qfi: bool,
    /// AC amplitude at which the QFI is evaluated.
    #[arg(long, allow_hyphen_values = true)]
    h_ac: Option<f64>,
    /// AC angular frequency (default pi / period).
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    /// AC phase.
    #[arg(long, allow_hyphen_values = true)]
    theta_ac: Option<f64>,

    #[arg(long)]
    seed: Option<u64>,
    /// Realization index (evolve).
    #[arg(long)]
    index: Option<u64>,
    #[arg(long, short = 'R')]
    realizations: Option<u64>,
    /// Number of periods.
    #[arg(long)]
    t_max: Option<u64>,
    /// Record every STRIDE-th period.
    #[arg(long)]
    stride: Option<u64>,
    /// Lifetime threshold.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Initial polar angle of every spin.
    #[arg(long, allow_hyphen_values = true)]
    initial_theta: Option<f64>,
    /// after-kick or before-kick.
    #[arg(long, value_parser = parse_sampling)]
    sampling: Option<Sampling>,
    /// Saturation window T1:T2.
    #[arg(long, value_parser = parse_window)]
    window: Option<SaturationWindow>,

    /// Swept axis, NAME=V1,V2,... or NAME=START:STOP:COUNT (repeatable).
    #[arg(long = "axis", value_parser = parse_axis)]
    axes: Vec<AxisSpec>,
    /// Chain sizes for qfi-scaling, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<i64>>,
    /// Disorder strengths for qfi-scaling, comma separated.
    #[arg(long, value_delimiter = ',')]
    disorders: Option<Vec<f64>>,
    /// Write one series file per sweep cell.
    #[arg(long)]
    series: bool,

    /// Output directory.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores; default from PFTC_WORKERS).
    #[arg(long, short)]
    workers: Option<usize>,
    /// Checkpoint file for resumable sweeps.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Seconds between checkpoint writes within a cell.
    #[arg(long)]
    checkpoint_interval: Option<f64>,
    #[arg(long, hide = true)]
    stop_after: Option<u64>,
}

fn parse_sampling(s: &str) -> Result<Sampling, String> {
    match s {
        "after-kick" => Ok(Sampling::AfterKick),
        "before-kick" => Ok(Sampling::BeforeKick),
        _ => Err("expected after-kick or before-kick".into()),
    }
}

fn parse_window(s: &str) -> Result<SaturationWindow, String> {
    let (a, b) = s.split_once(':').ok_or("expected T1:T2")?;
    let t1 = a.trim().parse().map_err(|_| format!("`{a}` is not a period count"))?;
    let t2 = b.trim().parse().map_err(|_| format!("`{b}` is not a period count"))?;
    Ok(SaturationWindow { t1, t2 })
}

fn parse_axis(s: &str) -> Result<AxisSpec, String> {
    s.parse().map_err(|e: ConfigError| e.0)
}

impl Flags {
    fn overrides(&self) -> PartialConfig {
        let chain = ChainTable {
            n: self.n,
            j1: self.j1,
            j2: self.j2,
            d: self.d,
            h: self.h,
            phi: self.phi,
            period: self.period,
            boundary: None,
        };
        let ac = (self.h_ac.is_some() || self.omega.is_some() || self.theta_ac.is_some())
            .then_some(AcTable { amplitude: self.h_ac, omega: self.omega, phase: self.theta_ac });
        PartialConfig {
            seed: self.seed,
            index: self.index,
            realizations: self.realizations,
            t_max: self.t_max,
            stride: self.stride,
            epsilon: self.epsilon,
            initial_theta: self.initial_theta,
            sampling: self.sampling,
            output: self.out.clone(),
            workers: self.workers,
            checkpoint: self.checkpoint.clone(),
            checkpoint_interval: self.checkpoint_interval,
            write_series: self.series.then_some(true),
            window: self.window,
            qfi: self.qfi.then_some(true),
            chain: Some(chain),
            ac,
            axes: (!self.axes.is_empty()).then(|| self.axes.clone()),
            sizes: self.sizes.clone(),
            disorders: self.disorders.clone(),
            mode: None,
        }
    }
}

fn run(mode: Mode, flags: &Flags) -> Result<(), CliError> {
    let file = match &flags.config {
        Some(path) => PartialConfig::from_file(path)?,
        None => PartialConfig::default(),
    };
    let cfg = file.merge(flags.overrides()).resolve(mode)?;
    for path in execute(&cfg, flags.stop_after)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, flags) = match &cli.command {
        Command::Evolve(f) => (Mode::Evolve, f),
        Command::Ensemble(f) => (Mode::Ensemble, f),
        Command::Sweep(f) => (Mode::Sweep, f),
        Command::QfiScaling(f) => (Mode::QfiScaling, f),
    };
    match run(mode, flags) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pftc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
