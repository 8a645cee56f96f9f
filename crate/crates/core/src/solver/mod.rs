//! Semi-implicit finite-volume integrator for the two-species system.

mod grid;
pub mod run;
pub mod scheme;
mod state;
pub mod tridiag;

pub use grid::Grid1D;
pub use run::{run, run_with, InitialCondition, RunSpec};
pub use scheme::{advance_density, cell_velocities, discrete_velocity, step, upwind_flux, StepControl, Stepper};
pub use state::SimState;
pub use tridiag::Tridiagonal;
