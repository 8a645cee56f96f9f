//! Single-pulse versus split classification.

use super::tracking::Track;
use crate::analysis::{admissible_set, lambda_pm};
use crate::error::Result;
use crate::params::{PhysicalParams, Species};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Single,
    Split,
    Indeterminate,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Single => "single",
            Regime::Split => "split",
            Regime::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "single" => Ok(Regime::Single),
            "split" => Ok(Regime::Split),
            "indeterminate" => Ok(Regime::Indeterminate),
            other => Err(format!("unknown regime `{other}`")),
        }
    }
}

/// Separation thresholds, in units of the analytic pulse width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    /// `1/lambda_1^- + 1/|lambda_1^+|` of the slow pure pulse (cm).
    pub pulse_width: f64,
    pub split_widths: f64,
    pub single_widths: f64,
    /// Trailing fraction of the run examined.
    pub window_fraction: f64,
    /// Decrease of the separation between consecutive samples still counted
    /// as growth (cm); absorbs sub-cell jitter of the peak positions.
    pub jitter: f64,
}

impl RegimeThresholds {
    pub fn new(pulse_width: f64) -> Self {
        Self {
            pulse_width,
            split_widths: 5.0,
            single_widths: 2.0,
            window_fraction: 1.0 / 3.0,
            jitter: 0.0,
        }
    }

    /// Thresholds scaled by the width of the slow species' pure pulse.
    pub fn from_params(params: &PhysicalParams) -> Result<Self> {
        let adm = admissible_set(params)?;
        let rates = lambda_pm(&adm.params, adm.sigma1, Species::One)?;
        Ok(Self::new(rates.width()))
    }

    pub fn with_jitter(mut self, jitter: f64) -> Self {
        self.jitter = jitter;
        self
    }
}

/// Peak separation `|x_2 - x_1|` at the sample times shared by both tracks.
pub fn separation(track1: &Track, track2: &Track) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut j = 0;
    for a in &track1.samples {
        while j < track2.samples.len() && track2.samples[j].t < a.t {
            j += 1;
        }
        if let Some(b) = track2.samples.get(j) {
            if b.t == a.t {
                out.push((a.t, (b.x_peak - a.x_peak).abs()));
            }
        }
    }
    out
}

/// Split when the separation grows monotonically over the trailing window
/// and ends above `split_widths` pulse widths; single when it stays below
/// `single_widths`; indeterminate otherwise.
pub fn classify_regime(track1: &Track, track2: &Track, th: &RegimeThresholds) -> Regime {
    let sep = separation(track1, track2);
    let (t0, t1) = match (sep.first(), sep.last()) {
        (Some(a), Some(b)) => (a.0, b.0),
        _ => return Regime::Indeterminate,
    };
    let cut = t1 - th.window_fraction * (t1 - t0);
    let window: Vec<f64> = sep.iter().filter(|s| s.0 >= cut).map(|s| s.1).collect();
    if window.is_empty() {
        return Regime::Indeterminate;
    }
    let single_limit = th.single_widths * th.pulse_width;
    if window.iter().all(|&d| d < single_limit) {
        return Regime::Single;
    }
    let growing = window.len() >= 2
        && window.windows(2).all(|w| w[1] >= w[0] - th.jitter)
        && window[window.len() - 1] > window[0];
    if growing && window[window.len() - 1] > th.split_widths * th.pulse_width {
        Regime::Split
    } else {
        Regime::Indeterminate
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::tracking::PeakSample;

    fn track(species: Species, f: impl Fn(f64) -> f64) -> Track {
        Track {
            species,
            samples: (0..=100)
                .map(|k| {
                    let t = k as f64 * 100.0;
                    PeakSample {
                        t,
                        x_peak: f(t),
                        peak_height: 1.0,
                    }
                })
                .collect(),
        }
    }

    #[test]
    fn identical_tracks_are_single() {
        let a = track(Species::One, |t| 0.1 + 2e-4 * t);
        let b = track(Species::Two, |t| 0.1 + 2e-4 * t);
        assert_eq!(classify_regime(&a, &b, &RegimeThresholds::new(0.057)), Regime::Single);
    }

    #[test]
    fn diverging_tracks_are_split() {
        // Δv = 1e-4 cm/s over 1e4 s: 1 cm apart, far beyond 5 widths.
        let a = track(Species::One, |t| 2e-4 * t);
        let b = track(Species::Two, |t| 3e-4 * t);
        assert_eq!(classify_regime(&a, &b, &RegimeThresholds::new(0.057)), Regime::Split);
    }

    #[test]
    fn stalled_separation_is_indeterminate() {
        // Constant 0.2 cm gap: above 2 widths, never growing.
        let a = track(Species::One, |t| 2e-4 * t);
        let b = track(Species::Two, |t| 2e-4 * t + 0.2);
        assert_eq!(
            classify_regime(&a, &b, &RegimeThresholds::new(0.057)),
            Regime::Indeterminate
        );
    }

    #[test]
    fn table1_width() {
        let th = RegimeThresholds::from_params(&PhysicalParams::table1()).unwrap();
        assert!((th.pulse_width - (1.0 / 43.13 + 1.0 / 29.39)).abs() < 1e-3);
    }

    #[test]
    fn regime_round_trips_through_text() {
        for r in [Regime::Single, Regime::Split, Regime::Indeterminate] {
            assert_eq!(r.as_str().parse::<Regime>().unwrap(), r);
        }
    }
}
