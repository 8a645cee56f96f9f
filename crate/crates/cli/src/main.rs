//! `chemopulse` command-line front end.

use chemopulse::analysis::{
    admissible_set, analytic_profiles, fit_parameters, phi_star, Interval, WaveSolution,
};
use chemopulse::experiments::{
    fit_speed, sweep_phi, KymographBuilder, PeakTracker, SweepOptions,
};
use chemopulse::io::{
    bifurcation_rows, dispersion_rows_for, g_curve_rows, load_config, profile_rows,
    snapshot_rows, track_rows, write_csv_file, write_ppm_file, OutputFormat, RunConfig,
};
use chemopulse::solver::run_with;
use chemopulse::{Error, Species};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const DISPERSION_POINTS: usize = 1001;
const G_CURVE_POINTS: usize = 1001;

#[derive(Parser)]
#[command(name = "chemopulse", version, about = "Two-species chemotactic pulse analysis and simulation")]
struct Cli {
    /// Run configuration (flat TOML, dotted keys); defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory, overrides `outputs.directory`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pure-species speeds, admissible intervals and the existence hypothesis.
    Dispersion,
    /// Critical fast-species fraction and samples of G.
    Phistar,
    /// Analytic pulse profiles at a given fast-species fraction.
    Profiles {
        #[arg(long)]
        phi: f64,
        /// Half-width of the sampled window, in pulse widths.
        #[arg(long, default_value_t = 10.0)]
        widths: f64,
        #[arg(long, default_value_t = 2001)]
        points: usize,
    },
    /// One simulation with the configured composition.
    Simulate,
    /// One simulation per fraction, run concurrently.
    Sweep {
        /// Comma-separated fast-species fractions.
        #[arg(long, value_delimiter = ',', required = true)]
        phis: Vec<f64>,
    },
    /// Recovers chi^S, chi^N and alpha from measured profile rates.
    Fit {
        /// Back-flank rate lambda^- (1/cm).
        #[arg(long, allow_hyphen_values = true)]
        lm: f64,
        /// Front-flank rate lambda^+ (1/cm).
        #[arg(long, allow_hyphen_values = true)]
        lp: f64,
        /// Pulse speed (cm/s).
        #[arg(long)]
        sigma: f64,
        /// Bacterial diffusivity (cm^2/s).
        #[arg(long)]
        d: f64,
        /// Chemoattractant diffusivity (cm^2/s); defaults to `params.DS`.
        #[arg(long)]
        ds: Option<f64>,
    },
}

/// A front-end failure with its exit status.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::InvalidParameter { .. } | Error::Config(_) | Error::Io { .. } => 2,
            Error::Hypothesis(_) => 4,
            _ => 3,
        };
        Failure {
            code,
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let message = f.message.split_whitespace().collect::<Vec<_>>().join(" ");
            eprintln!("error[{}]: {message}", f.kind);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let mut config = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = cli.out {
        config.outputs.directory = out;
    }
    match cli.command {
        Command::Dispersion => dispersion(&config),
        Command::Phistar => phistar(&config),
        Command::Profiles { phi, widths, points } => profiles(&config, phi, widths, points),
        Command::Simulate => simulate(&config),
        Command::Sweep { phis } => sweep(&config, &phis),
        Command::Fit { lm, lp, sigma, d, ds } => {
            let fit = fit_parameters(lm, lp, sigma, d, ds.unwrap_or(config.params.ds))?;
            println!("chi_S = {:e}", fit.chi_s);
            println!("chi_N = {:e}", fit.chi_n);
            println!("alpha = {:e}", fit.alpha);
            Ok(())
        }
    }
}

fn output_dir(config: &RunConfig) -> CliResult<&Path> {
    let dir = config.outputs.directory.as_path();
    std::fs::create_dir_all(dir).map_err(|e| Failure {
        code: 2,
        kind: "io",
        message: format!("{}: {e}", dir.display()),
    })?;
    Ok(dir)
}

fn fmt_interval(i: &Interval, open: bool) -> String {
    let (l, r) = if open { ('(', ')') } else { ('[', ']') };
    if i.is_empty() {
        "empty".into()
    } else {
        format!("{l}{:e}, {:e}{r}", i.lo, i.hi)
    }
}

fn dispersion(config: &RunConfig) -> CliResult {
    let adm = admissible_set(&config.params)?;
    println!("sigma1 = {:e}", adm.sigma1);
    println!("sigma2 = {:e}", adm.sigma2);
    println!("relabeled = {}", adm.relabeled);
    println!("I1 = {}", fmt_interval(&adm.i1, false));
    println!("I2 = {}", fmt_interval(&adm.i2, false));
    println!("Omega = {}", fmt_interval(&adm.omega, true));
    println!("hypothesis_holds = {}", adm.hypothesis_holds());
    if let Some(f) = adm.failure {
        println!("hypothesis_failure = {f}");
    }
    if config.outputs.wants(OutputFormat::Csv) {
        let path = output_dir(config)?.join("dispersion.csv");
        write_csv_file(&path, &dispersion_rows_for(&adm, DISPERSION_POINTS))?;
    }
    Ok(())
}

fn phistar(config: &RunConfig) -> CliResult {
    let bif = phi_star(&config.params)?;
    println!("lambda_star = {:e}", bif.lambda_star);
    println!("sigma_star = {:e}", bif.sigma_star);
    println!("phi_star = {:e}", bif.phi_star);
    if config.outputs.wants(OutputFormat::Csv) {
        let path = output_dir(config)?.join("g_curve.csv");
        write_csv_file(&path, &g_curve_rows(&bif.admissibility, G_CURVE_POINTS))?;
    }
    Ok(())
}

fn profiles(config: &RunConfig, phi: f64, widths: f64, points: usize) -> CliResult {
    if points < 2 || !(widths > 0.0) {
        return Err(Failure {
            code: 2,
            kind: "invalid_parameter",
            message: "--points must be >= 2 and --widths > 0".into(),
        });
    }
    let solution = WaveSolution::from_fraction(&config.params, phi, config.init.m_total)?
        .ok_or_else(|| Failure {
            code: 4,
            kind: "no_pulse",
            message: format!("no single-speed pulse at phi_red = {phi}: fraction exceeds phi*"),
        })?;
    let width = Species::BOTH
        .iter()
        .filter_map(|&sp| solution.component(sp))
        .map(|c| c.rates.width())
        .fold(0.0, f64::max);
    let half = widths * width;
    let z: Vec<f64> = (0..points)
        .map(|k| -half + 2.0 * half * k as f64 / (points - 1) as f64)
        .collect();
    println!("sigma = {:e}", solution.sigma);
    println!("concentration_scale = {:e}", solution.concentration_scale());
    if config.outputs.wants(OutputFormat::Csv) {
        let path = output_dir(config)?.join("profiles.csv");
        write_csv_file(&path, &profile_rows(&analytic_profiles(&solution, &z)))?;
    }
    Ok(())
}

fn simulate(config: &RunConfig) -> CliResult {
    let spec = config.run_spec()?;
    let mut snapshots = Vec::new();
    let mut tracker = PeakTracker::new(spec.grid);
    let mut kymo = KymographBuilder::new();
    let mut kymo_err = None;
    run_with(&spec, |s| {
        tracker.observe(s);
        if let Err(e) = kymo.push(s) {
            kymo_err.get_or_insert(e);
        }
        snapshots.push(s.clone());
    })?;
    if let Some(e) = kymo_err {
        return Err(e.into());
    }
    let record = tracker.finish();
    println!("snapshots = {}", snapshots.len());
    for sp in Species::BOTH {
        if let Some(track) = record.track(sp) {
            if let Ok(fit) = fit_speed(track, config.discard_fraction) {
                println!("speed{} = {:e}", sp.label(), fit.speed);
            }
        }
    }
    let dir = output_dir(config)?;
    if config.outputs.wants(OutputFormat::Csv) {
        write_csv_file(&dir.join("snapshots.csv"), &snapshot_rows(&spec.grid, &snapshots))?;
        write_csv_file(&dir.join("track.csv"), &track_rows(&record))?;
    }
    if config.outputs.wants(OutputFormat::Ppm) {
        write_ppm_file(&dir.join("kymograph.ppm"), &kymo.finish()?)?;
    }
    Ok(())
}

fn sweep(config: &RunConfig, phis: &[f64]) -> CliResult {
    let spec = config.run_spec()?;
    let opts = SweepOptions {
        discard_fraction: config.discard_fraction,
        keep_kymographs: config.outputs.wants(OutputFormat::Ppm),
        ..SweepOptions::default()
    };
    let result = sweep_phi(&spec, phis, &opts)?;
    match result.phi_star {
        Some(p) => println!("phi_star = {p:e}"),
        None => println!("phi_star = none"),
    }
    for row in &result.rows {
        match &row.error {
            Some(e) => println!("phi_red = {} failed: {e}", row.phi_red),
            None => println!("phi_red = {} regime = {}", row.phi_red, row.regime),
        }
    }
    let dir = output_dir(config)?;
    if config.outputs.wants(OutputFormat::Csv) {
        write_csv_file(&dir.join("bifurcation.csv"), &bifurcation_rows(&result))?;
    }
    for row in &result.rows {
        if let Some(k) = &row.kymograph {
            write_ppm_file(&dir.join(format!("kymograph_phi_{}.ppm", row.phi_red)), k)?;
        }
    }
    Ok(())
}
