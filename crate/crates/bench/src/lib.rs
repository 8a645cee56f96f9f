//! Shared fixtures for the benchmarks.

use chemopulse::io::RunConfig;
use chemopulse::solver::{RunSpec, SimState};

/// Default run description with `nx` cells over the default channel.
pub fn default_spec(nx: usize) -> RunSpec {
    let mut config = RunConfig {
        nx,
        ..RunConfig::default()
    };
    config.init.phi_red = 0.5;
    config.run_spec().expect("default configuration is valid")
}

/// A developed state: the default run advanced by `steps` steps.
pub fn developed_state(spec: &RunSpec, steps: usize) -> SimState {
    let short = spec.clone().with_steps(steps).expect("valid step count");
    let mut last = None;
    chemopulse::solver::run_with(&short, |s| last = Some(s.clone())).expect("run succeeds");
    last.expect("at least one snapshot")
}
