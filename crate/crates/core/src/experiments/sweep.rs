//! Composition sweep: one simulation per fast-species fraction.

use super::kymograph::{Kymograph, KymographBuilder};
use super::regime::{classify_regime, Regime, RegimeThresholds};
use super::tracking::{fit_speed, PeakTracker, DEFAULT_DISCARD_FRACTION};
use crate::analysis::{phi_star, BifurcationData};
use crate::error::{Error, Result};
use crate::params::Species;
use crate::solver::{run_with, RunSpec};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub discard_fraction: f64,
    pub keep_kymographs: bool,
    /// Tolerated separation decrease between snapshots, in cells.
    pub jitter_cells: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            discard_fraction: DEFAULT_DISCARD_FRACTION,
            keep_kymographs: false,
            jitter_cells: 0.5,
        }
    }
}

/// Outcome of one simulation of the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub phi_red: f64,
    /// Fitted peak speed of species 1 (cm/s); `None` without species 1.
    pub speed_slow: Option<f64>,
    /// Fitted peak speed of species 2 (cm/s); `None` without species 2.
    pub speed_fast: Option<f64>,
    pub regime: Regime,
    /// Two-species pulse speed, `None` above the threshold.
    pub sigma_analytic: Option<f64>,
    /// Failure message; the other fields are then placeholders.
    pub error: Option<String>,
    pub kymograph: Option<Kymograph>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// `None` when the hypothesis fails for the base parameters.
    pub phi_star: Option<f64>,
}

/// Analytic pulse speed at fast-species fraction `phi_red` of the input
/// labels (species 2 is the one counted by `phi_red`).
pub fn analytic_speed(bif: &BifurcationData, phi_red: f64) -> Option<f64> {
    let adm = &bif.admissibility;
    // Fraction of the species that is faster after ordering.
    let phi_fast = if adm.relabeled { 1.0 - phi_red } else { phi_red };
    if phi_fast >= 1.0 {
        return Some(adm.sigma2);
    }
    bif.sigma_two(phi_fast).ok().and_then(|s| s.sigma())
}

/// Runs one simulation per entry of `phis` (sorted, duplicates removed),
/// concurrently. Total mass comes from `base.init` and is the same for
/// every row.
pub fn sweep_phi(base: &RunSpec, phis: &[f64], opts: &SweepOptions) -> Result<SweepResult> {
    base.validate()?;
    let mut phis: Vec<f64> = phis.to_vec();
    if let Some(bad) = phis.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::invalid("phi_red", format!("must lie in [0, 1], got {bad}")));
    }
    phis.sort_by(f64::total_cmp);
    phis.dedup();

    let bif = phi_star(&base.params).ok();
    let thresholds = RegimeThresholds::from_params(&base.params)
        .map(|t| t.with_jitter(opts.jitter_cells * base.grid.dx()))?;

    let rows = phis
        .par_iter()
        .map(|&phi| {
            let sigma_analytic = bif.as_ref().and_then(|b| analytic_speed(b, phi));
            match simulate_row(base, phi, opts, &thresholds) {
                Ok(mut row) => {
                    row.sigma_analytic = sigma_analytic;
                    row
                }
                Err(e) => SweepRow {
                    phi_red: phi,
                    speed_slow: None,
                    speed_fast: None,
                    regime: Regime::Indeterminate,
                    sigma_analytic,
                    error: Some(e.to_string()),
                    kymograph: None,
                },
            }
        })
        .collect();
    Ok(SweepResult {
        rows,
        phi_star: bif.map(|b| b.phi_star),
    })
}

fn simulate_row(
    base: &RunSpec,
    phi: f64,
    opts: &SweepOptions,
    thresholds: &RegimeThresholds,
) -> Result<SweepRow> {
    let mut spec = base.clone();
    spec.init.phi_red = phi;
    let mut tracker = PeakTracker::new(spec.grid);
    let mut kymo = opts.keep_kymographs.then(KymographBuilder::new);
    let mut kymo_err = None;
    run_with(&spec, |s| {
        tracker.observe(s);
        if let Some(k) = kymo.as_mut() {
            if let Err(e) = k.push(s) {
                kymo_err.get_or_insert(e);
            }
        }
    })?;
    if let Some(e) = kymo_err {
        return Err(e);
    }

    let present = |sp: Species| match sp {
        Species::One => phi < 1.0,
        Species::Two => phi > 0.0,
    };
    let mut speeds = [None, None];
    let mut tracks = [None, None];
    for sp in Species::BOTH {
        if present(sp) {
            let track = tracker.track(sp)?;
            speeds[sp.slot()] = Some(fit_speed(&track, opts.discard_fraction)?.speed);
            tracks[sp.slot()] = Some(track);
        }
    }
    let regime = match (&tracks[0], &tracks[1]) {
        (Some(a), Some(b)) => classify_regime(a, b, thresholds),
        _ => Regime::Single,
    };
    Ok(SweepRow {
        phi_red: phi,
        speed_slow: speeds[0],
        speed_fast: speeds[1],
        regime,
        sigma_analytic: None,
        error: None,
        kymograph: kymo.map(|k| k.finish()).transpose()?,
    })
}

