//! Peak positions over time and constant-speed fits.

use crate::error::{Error, Result};
use crate::params::Species;
use crate::solver::{Grid1D, SimState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakSample {
    pub t: f64,
    pub x_peak: f64,
    pub peak_height: f64,
}

/// Peak trajectory of one species.
#[derive(Debug, Clone, PartialEq)]
pub struct Track {
    pub species: Species,
    pub samples: Vec<PeakSample>,
}

/// Trajectories of both species; a species with no mass has no track.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackRecord {
    pub tracks: [Option<Track>; 2],
}

impl TrackRecord {
    pub fn track(&self, species: Species) -> Option<&Track> {
        self.tracks[species.slot()].as_ref()
    }
}

/// Index of the largest value, leftmost on ties. `None` when the maximum is
/// not strictly positive.
pub fn peak_index(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, &v) in values.iter().enumerate() {
        if v > 0.0 && best.is_none_or(|b| v > values[b]) {
            best = Some(k);
        }
    }
    best
}

/// Position and height of the parabola through the peak cell and its two
/// neighbours. Peaks on the boundary cells are not refined.
pub fn refine_peak(values: &[f64], k: usize, grid: &Grid1D) -> (f64, f64) {
    let x = grid.center(k);
    if k == 0 || k + 1 >= values.len() {
        return (x, values[k]);
    }
    let (y0, y1, y2) = (values[k - 1], values[k], values[k + 1]);
    let curvature = y0 - 2.0 * y1 + y2;
    if curvature >= 0.0 {
        return (x, y1);
    }
    let offset = (0.5 * (y0 - y2) / curvature).clamp(-0.5, 0.5);
    (x + offset * grid.dx(), y1 - 0.25 * (y0 - y2) * offset)
}

/// Incremental tracker fed one snapshot at a time.
#[derive(Debug, Clone)]
pub struct PeakTracker {
    grid: Grid1D,
    samples: [Vec<PeakSample>; 2],
    missing: [bool; 2],
}

impl PeakTracker {
    pub fn new(grid: Grid1D) -> Self {
        Self {
            grid,
            samples: [Vec::new(), Vec::new()],
            missing: [false; 2],
        }
    }

    pub fn observe(&mut self, state: &SimState) {
        for sp in Species::BOTH {
            let rho = state.density(sp);
            match peak_index(rho) {
                Some(k) => {
                    let (x_peak, peak_height) = refine_peak(rho, k, &self.grid);
                    self.samples[sp.slot()].push(PeakSample {
                        t: state.t,
                        x_peak,
                        peak_height,
                    });
                }
                None => self.missing[sp.slot()] = true,
            }
        }
    }

    /// Track of one species; fails if any observed snapshot had no peak.
    pub fn track(&self, species: Species) -> Result<Track> {
        let samples = &self.samples[species.slot()];
        if self.missing[species.slot()] || samples.is_empty() {
            return Err(Error::NoPeak {
                species: species.label(),
            });
        }
        Ok(Track {
            species,
            samples: samples.clone(),
        })
    }

    pub fn finish(self) -> TrackRecord {
        let tracks = Species::BOTH.map(|sp| self.track(sp).ok());
        TrackRecord { tracks }
    }
}

/// Peak trajectory of `species`.
pub fn track_species(snapshots: &[SimState], grid: &Grid1D, species: Species) -> Result<Track> {
    if snapshots.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "peak tracking needs at least 2 snapshots, got {}",
            snapshots.len()
        )));
    }
    let mut tracker = PeakTracker::new(*grid);
    snapshots.iter().for_each(|s| tracker.observe(s));
    tracker.track(species)
}

/// Peak trajectories of every species that has a peak in all snapshots.
pub fn track_peaks(snapshots: &[SimState], grid: &Grid1D) -> Result<TrackRecord> {
    if snapshots.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "peak tracking needs at least 2 snapshots, got {}",
            snapshots.len()
        )));
    }
    let mut tracker = PeakTracker::new(*grid);
    snapshots.iter().for_each(|s| tracker.observe(s));
    Ok(tracker.finish())
}

/// Least-squares line through the retained part of a track.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedFit {
    /// Slope (cm/s).
    pub speed: f64,
    /// Position at `t = 0` (cm).
    pub intercept: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub points: usize,
    /// Root-mean-square residual (cm).
    pub rms: f64,
}

pub const DEFAULT_DISCARD_FRACTION: f64 = 0.3;
pub const MIN_FIT_POINTS: usize = 5;

/// Fits `x_peak = intercept + speed * t` after dropping the leading
/// `discard_fraction` of the time range as transient.
pub fn fit_speed(track: &Track, discard_fraction: f64) -> Result<SpeedFit> {
    if !(0.0..1.0).contains(&discard_fraction) {
        return Err(Error::invalid(
            "discard_fraction",
            format!("must lie in [0, 1), got {discard_fraction}"),
        ));
    }
    let (first, last) = match (track.samples.first(), track.samples.last()) {
        (Some(a), Some(b)) => (a.t, b.t),
        _ => return Err(Error::InsufficientData("empty track".into())),
    };
    let cut = first + discard_fraction * (last - first);
    let kept: Vec<&PeakSample> = track.samples.iter().filter(|s| s.t >= cut).collect();
    if kept.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData(format!(
            "{} points after discarding the transient, need {MIN_FIT_POINTS}",
            kept.len()
        )));
    }
    let n = kept.len() as f64;
    let t_mean = kept.iter().map(|s| s.t).sum::<f64>() / n;
    let x_mean = kept.iter().map(|s| s.x_peak).sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for s in &kept {
        let dt = s.t - t_mean;
        sxx += dt * dt;
        sxy += dt * (s.x_peak - x_mean);
    }
    if sxx == 0.0 {
        return Err(Error::InsufficientData("all retained samples share one time".into()));
    }
    let speed = sxy / sxx;
    let intercept = x_mean - speed * t_mean;
    let rms = (kept
        .iter()
        .map(|s| {
            let r = s.x_peak - (intercept + speed * s.t);
            r * r
        })
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(SpeedFit {
        speed,
        intercept,
        t_start: kept[0].t,
        t_end: kept[kept.len() - 1].t,
        points: kept.len(),
        rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_track(ts: &[f64], f: impl Fn(f64) -> f64) -> Track {
        Track {
            species: Species::One,
            samples: ts
                .iter()
                .map(|&t| PeakSample {
                    t,
                    x_peak: f(t),
                    peak_height: 1.0,
                })
                .collect(),
        }
    }

    #[test]
    fn exact_line_fit() {
        let ts: Vec<f64> = (0..20).map(|k| k as f64 * 10.0).collect();
        let fit = fit_speed(&line_track(&ts, |t| 1e-4 * t), 0.3).unwrap();
        assert!((fit.speed - 1e-4).abs() < 1e-18);
        assert!(fit.rms < 1e-16);
        assert!(fit.t_start >= 57.0);
    }

    #[test]
    fn five_point_line() {
        let ts = [0.0, 1.0, 2.0, 3.0, 4.0];
        let fit = fit_speed(&line_track(&ts, |t| 0.25 + 3.5 * t), 0.0).unwrap();
        assert!((fit.speed - 3.5).abs() <= 4.0 * f64::EPSILON * 3.5);
        assert!((fit.intercept - 0.25).abs() < 1e-14);
    }

    #[test]
    fn too_few_points() {
        let ts = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0];
        assert!(matches!(
            fit_speed(&line_track(&ts, |t| t), 0.3),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn leftmost_tie() {
        let v = [0.0, 1.0, 3.0, 3.0, 1.0, 0.0];
        assert_eq!(peak_index(&v), Some(2));
        assert_eq!(peak_index(&[0.0; 4]), None);
    }

    #[test]
    fn symmetric_tie_refines_to_midpoint() {
        let g = Grid1D::new(0.8, 8).unwrap();
        let v = [0.0, 1.0, 3.0, 3.0, 1.0, 0.0, 0.0, 0.0];
        let (x, h) = refine_peak(&v, 2, &g);
        assert!((x - 0.5 * (g.center(2) + g.center(3))).abs() < 1e-15);
        assert!(h >= 3.0);
    }

    #[test]
    fn parabola_is_recovered_exactly() {
        let g = Grid1D::new(1.0, 100).unwrap();
        let x0 = 0.4137;
        let v: Vec<f64> = g.centers().iter().map(|x| 5.0 - 1e3 * (x - x0) * (x - x0)).collect();
        let k = peak_index(&v).unwrap();
        let (x, h) = refine_peak(&v, k, &g);
        assert!((x - x0).abs() < 1e-12);
        assert!((h - 5.0).abs() < 1e-9);
    }

    #[test]
    fn zero_density_has_no_peak() {
        let g = Grid1D::new(1.0, 10).unwrap();
        let mut s = SimState::zeros(10);
        s.rho1[3] = 1.0;
        let snaps = vec![s.clone(), SimState { t: 1.0, ..s }];
        assert!(matches!(
            track_species(&snaps, &g, Species::Two),
            Err(Error::NoPeak { species: 2 })
        ));
        let rec = track_peaks(&snaps, &g).unwrap();
        assert!(rec.track(Species::One).is_some());
        assert!(rec.track(Species::Two).is_none());
    }
}
