//! Peak tracking, speed fits, regime classification, composition sweeps
//! and kymographs built on top of the solver.

mod kymograph;
mod regime;
mod sweep;
mod tracking;

pub use kymograph::{render_kymograph, Kymograph, KymographBuilder};
pub use regime::{classify_regime, separation, Regime, RegimeThresholds};
pub use sweep::{analytic_speed, sweep_phi, SweepOptions, SweepResult, SweepRow};
pub use tracking::{
    fit_speed, peak_index, refine_peak, track_peaks, track_species, PeakSample, PeakTracker,
    SpeedFit, Track, TrackRecord, DEFAULT_DISCARD_FRACTION, MIN_FIT_POINTS,
};
