//! One time step of the semi-implicit upwind scheme.
//!
//! Densities: explicit upwind advection with velocities frozen at `t^n`, then
//! implicit diffusion. Nutrient: implicit diffusion and consumption, the
//! consumption using the densities at `t^n`. Chemoattractant: implicit
//! diffusion and decay, produced by the densities at `t^{n+1}`. All four
//! fields have zero-flux walls at both ends of the channel.

use super::grid::Grid1D;
use super::state::SimState;
use super::tridiag::Tridiagonal;
use crate::error::{Error, Result};
use crate::params::{PhysicalParams, Species, SpeciesParams};

/// Value taken by the sign function at 0: flat regions induce no drift.
pub const SGN_ZERO: f64 = 0.0;

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        SGN_ZERO
    }
}

fn pos(a: f64) -> f64 {
    a.max(0.0)
}

fn neg(a: f64) -> f64 {
    (-a).max(0.0)
}

/// `chi * sgn(field[k+1] - field[k])`, the drift attached to cell `k`.
///
/// Valid for `k <= nx - 2`.
pub fn discrete_velocity(field: &[f64], k: usize, chi: f64) -> f64 {
    chi * sgn(field[k + 1] - field[k])
}

/// Total drift `a_k[S] + a_k[N]` of one species for every cell. The last
/// cell sees its mirror ghost across the wall and gets zero drift.
pub fn cell_velocities(sp: &SpeciesParams, s: &[f64], n: &[f64], out: &mut Vec<f64>) {
    let nx = s.len();
    out.clear();
    out.extend((0..nx - 1).map(|k| discrete_velocity(s, k, sp.chi_s) + discrete_velocity(n, k, sp.chi_n)));
    out.push(0.0);
}

/// Upwind flux through the interface between cells `k` and `k + 1`:
/// `a_k^+ rho_k - a_{k+1}^- rho_{k+1}`. The right wall (`k = nx - 1`)
/// carries no flux.
pub fn upwind_flux(rho: &[f64], a: &[f64], k: usize) -> f64 {
    if k + 1 >= rho.len() {
        return 0.0;
    }
    pos(a[k]) * rho[k] - neg(a[k + 1]) * rho[k + 1]
}

/// Advances one density by `dt`: conservative upwind transport with cell
/// velocities `a`, then implicit diffusion with coefficient `d` (which may be
/// zero).
pub fn advance_density(
    rho: &[f64],
    a: &[f64],
    d: f64,
    dt: f64,
    dx: f64,
    scratch: &mut Vec<f64>,
) -> Result<Vec<f64>> {
    let nx = rho.len();
    let ratio = dt / dx;
    let mut next = Vec::with_capacity(nx);
    let mut flux_left = 0.0;
    for k in 0..nx {
        let flux_right = upwind_flux(rho, a, k);
        next.push(rho[k] - ratio * (flux_right - flux_left));
        flux_left = flux_right;
    }
    if d != 0.0 {
        Tridiagonal::implicit_diffusion(nx, d * dt / (dx * dx), |_| 0.0)
            .solve_in_place(&mut next, scratch)?;
    }
    Ok(next)
}

/// Time step and its safety factor relative to the advective CFL bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub dt: f64,
    pub cfl: f64,
}

impl StepControl {
    pub const DEFAULT_CFL: f64 = 0.9;

    /// Largest stable step `dx / max_i (chi_i^S + chi_i^N)`.
    pub fn max_dt(params: &PhysicalParams, grid: &Grid1D) -> f64 {
        grid.dx() / params.max_drift()
    }

    /// The step `cfl * dx / max_i (chi_i^S + chi_i^N)`.
    pub fn from_cfl(params: &PhysicalParams, grid: &Grid1D, cfl: f64) -> Result<Self> {
        if !(cfl > 0.0 && cfl <= 1.0) {
            return Err(Error::invalid("time.cfl", format!("must lie in (0, 1], got {cfl}")));
        }
        Ok(Self {
            dt: cfl * Self::max_dt(params, grid),
            cfl,
        })
    }

    fn check(&self, params: &PhysicalParams, grid: &Grid1D) -> Result<()> {
        let bound = self.cfl.min(1.0) * Self::max_dt(params, grid);
        if !(self.dt > 0.0) || self.dt > bound * (1.0 + 1e-12) {
            return Err(Error::CflViolation {
                dt: self.dt,
                max: bound,
            });
        }
        Ok(())
    }
}

/// Reusable buffers for repeated steps.
#[derive(Debug, Default)]
pub struct Stepper {
    velocity: Vec<f64>,
    scratch: Vec<f64>,
}

impl Stepper {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn step(
        &mut self,
        state: &SimState,
        params: &PhysicalParams,
        grid: &Grid1D,
        ctrl: &StepControl,
    ) -> Result<SimState> {
        ctrl.check(params, grid)?;
        let nx = grid.nx();
        if state.nx() != nx || [&state.rho2, &state.s, &state.n].iter().any(|f| f.len() != nx) {
            return Err(Error::invalid("state", format!("fields must have {nx} cells")));
        }
        let (dt, dx) = (ctrl.dt, grid.dx());

        let mut densities = [Vec::new(), Vec::new()];
        for sp in Species::BOTH {
            let sparams = params.species(sp);
            cell_velocities(&sparams, &state.s, &state.n, &mut self.velocity);
            densities[sp.slot()] =
                advance_density(state.density(sp), &self.velocity, sparams.d, dt, dx, &mut self.scratch)?;
        }
        let [rho1, rho2] = densities;

        let mut n = state.n.clone();
        let consumption = |k: usize| dt * (params.gamma1 * state.rho1[k] + params.gamma2 * state.rho2[k]);
        Tridiagonal::implicit_diffusion(nx, params.dn * dt / (dx * dx), consumption)
            .solve_in_place(&mut n, &mut self.scratch)?;

        let mut s: Vec<f64> = (0..nx)
            .map(|k| state.s[k] + dt * (rho1[k] + rho2[k]))
            .collect();
        Tridiagonal::implicit_diffusion(nx, params.ds * dt / (dx * dx), |_| dt * params.alpha)
            .solve_in_place(&mut s, &mut self.scratch)?;

        let next = SimState {
            t: state.t + dt,
            rho1,
            rho2,
            s,
            n,
        };
        if !next.is_admissible() {
            return Err(Error::Numerical("step produced a negative or non-finite value".into()));
        }
        Ok(next)
    }
}

/// Advances `state` by one step of `ctrl.dt`.
pub fn step(state: &SimState, params: &PhysicalParams, grid: &Grid1D, ctrl: &StepControl) -> Result<SimState> {
    Stepper::new().step(state, params, grid, ctrl)
}
