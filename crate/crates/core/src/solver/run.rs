//! Time loop and the default initial condition.

use super::grid::Grid1D;
use super::scheme::{StepControl, Stepper};
use super::state::SimState;
use crate::error::{Error, Result};
use crate::params::PhysicalParams;

/// Bacteria packed against the left wall over a uniform nutrient bath.
///
/// `rho_i(x, 0) = C_i exp(-x / ell0)` with `C_i` set so the discrete mass is
/// exactly `M_i`; `S = 0`; `N = N0`. Species 2 carries `phi_red * m_total`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialCondition {
    pub m_total: f64,
    pub phi_red: f64,
    pub ell0: f64,
    pub n0: f64,
}

impl Default for InitialCondition {
    fn default() -> Self {
        Self {
            m_total: 1.0,
            phi_red: 0.0,
            ell0: 0.05,
            n0: 1.0,
        }
    }
}

impl InitialCondition {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("init.M_total", self.m_total), ("init.ell0", self.ell0), ("init.N0", self.n0)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::invalid(name, format!("must be > 0, got {v}")));
            }
        }
        if !(0.0..=1.0).contains(&self.phi_red) {
            return Err(Error::invalid(
                "init.phi_red",
                format!("must lie in [0, 1], got {}", self.phi_red),
            ));
        }
        Ok(())
    }

    pub fn build(&self, grid: &Grid1D) -> SimState {
        let shape: Vec<f64> = (0..grid.nx()).map(|k| (-grid.center(k) / self.ell0).exp()).collect();
        let norm = shape.iter().sum::<f64>() * grid.dx();
        let scaled = |m: f64| shape.iter().map(|v| v * m / norm).collect::<Vec<_>>();
        SimState {
            t: 0.0,
            rho1: scaled((1.0 - self.phi_red) * self.m_total),
            rho2: scaled(self.phi_red * self.m_total),
            s: vec![0.0; grid.nx()],
            n: vec![self.n0; grid.nx()],
        }
    }
}

/// Everything needed to run one simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub params: PhysicalParams,
    pub grid: Grid1D,
    pub t_end: f64,
    pub cfl: f64,
    /// Steps between stored snapshots.
    pub snapshot_stride: usize,
    pub init: InitialCondition,
}

impl RunSpec {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.init.validate()?;
        if !self.t_end.is_finite() || self.t_end < 0.0 {
            return Err(Error::invalid("time.t_end", format!("must be >= 0, got {}", self.t_end)));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::invalid("time.snapshot_stride", "must be >= 1"));
        }
        StepControl::from_cfl(&self.params, &self.grid, self.cfl)?;
        Ok(())
    }

    /// Number of uniform steps reaching `t_end` without exceeding the CFL step.
    pub fn steps(&self) -> Result<usize> {
        let ctrl = StepControl::from_cfl(&self.params, &self.grid, self.cfl)?;
        let n = (self.t_end / ctrl.dt * (1.0 - 1e-12)).ceil();
        Ok(n.max(0.0) as usize)
    }

    /// Uniform step used by [`run`]: `t_end / steps`, at most the CFL step.
    pub fn control(&self) -> Result<StepControl> {
        let ctrl = StepControl::from_cfl(&self.params, &self.grid, self.cfl)?;
        let n = self.steps()?;
        Ok(if n == 0 {
            ctrl
        } else {
            StepControl {
                dt: (self.t_end / n as f64).min(ctrl.dt),
                cfl: self.cfl,
            }
        })
    }

    /// `t_end` giving exactly `steps` steps at the CFL step.
    pub fn with_steps(mut self, steps: usize) -> Result<Self> {
        let ctrl = StepControl::from_cfl(&self.params, &self.grid, self.cfl)?;
        self.t_end = steps as f64 * ctrl.dt;
        Ok(self)
    }
}

/// Runs the simulation, handing every stored snapshot to `observe`.
///
/// The initial state is always delivered, then every `snapshot_stride`
/// steps, and the final state once more if it is not on the stride.
pub fn run_with<F>(spec: &RunSpec, mut observe: F) -> Result<()>
where
    F: FnMut(&SimState),
{
    spec.validate()?;
    let ctrl = spec.control()?;
    let steps = spec.steps()?;
    let mut state = spec.init.build(&spec.grid);
    observe(&state);
    let mut stepper = Stepper::new();
    for i in 1..=steps {
        state = stepper
            .step(&state, &spec.params, &spec.grid, &ctrl)
            .map_err(|e| Error::Step {
                t: state.t,
                source: Box::new(e),
            })?;
        if i == steps {
            state.t = spec.t_end;
        }
        if i % spec.snapshot_stride == 0 || i == steps {
            observe(&state);
        }
    }
    Ok(())
}

/// Runs the simulation and collects the snapshots.
pub fn run(spec: &RunSpec) -> Result<Vec<SimState>> {
    let mut out = Vec::new();
    run_with(spec, |s| out.push(s.clone()))?;
    Ok(out)
}
