//! Two-species chemotactic traveling pulses.
//!
//! * [`analysis`]: closed-form pulse speeds, admissible set, critical
//!   fraction `phi*`, exact profiles and parameter fitting.
//! * [`solver`]: conservative semi-implicit upwind integrator on a sealed
//!   channel.
//! * [`experiments`]: peak tracking, speed fits, regime classification,
//!   fraction sweeps and kymographs.
//! * [`io`]: run configuration files, CSV tables and PPM kymographs.

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod io;
pub mod params;
pub mod solver;

pub use error::{Error, HypothesisFailure, Result};
pub use params::{PhysicalParams, Species, SpeciesParams};
