//! Closed-form traveling pulse profiles.
//!
//! Densities are two-sided exponentials peaked at `z = 0`. The chemoattractant
//! profile is the convolution `S = K * (rho_1 + rho_2)` with the kernel
//! [`kernel`], integrated exactly over the four pieces where both the kernel
//! and the density are single exponentials. `K * rho` is the concentration
//! solving `-sigma S' = D_S S'' - alpha S + rho` multiplied by
//! `sqrt(sigma^2 + 4 alpha D_S)`; see [`WaveSolution::concentration_scale`].

use super::bifurcation::{phi_star, TwoSpeciesSpeed};
use super::dispersion::{check_admissible, lambda_pm, rates_unchecked, species_speed, DecayRates};
use crate::error::{Error, Result};
use crate::params::{PhysicalParams, Species};

/// One subpopulation's part of a pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseComponent {
    pub rates: DecayRates,
    /// Peak density at `z = 0`.
    pub rho_max: f64,
    /// Total mass `∫ rho dz`.
    pub mass: f64,
}

impl PulseComponent {
    pub fn density(&self, z: f64) -> f64 {
        let rate = if z < 0.0 { self.rates.minus } else { self.rates.plus };
        self.rho_max * (rate * z).exp()
    }
}

/// A solved traveling pulse. Species absent from the mixture carry `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveSolution {
    pub sigma: f64,
    pub ds: f64,
    pub alpha: f64,
    pub components: [Option<PulseComponent>; 2],
}

/// Peak density of a pulse with mass `mass` and the given rates.
///
/// `M = rho^M (1/lambda^- + 1/|lambda^+|) = rho^M 2 chi^S D / ((chi^S)^2 - (sigma - chi^N)^2)`.
pub fn peak_from_mass(mass: f64, rates: &DecayRates) -> f64 {
    mass / rates.width()
}

impl WaveSolution {
    /// Pulse at speed `sigma` carrying masses `m1`, `m2`.
    pub fn new(params: &PhysicalParams, sigma: f64, m1: f64, m2: f64) -> Result<Self> {
        params.validate()?;
        if !sigma.is_finite() {
            return Err(Error::invalid("sigma", "must be finite"));
        }
        let mut components = [None, None];
        for (sp, m) in Species::BOTH.into_iter().zip([m1, m2]) {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::invalid(
                    format!("M{}", sp.label()),
                    format!("mass must be finite and >= 0, got {m}"),
                ));
            }
            if m > 0.0 {
                let rates = lambda_pm(params, sigma, sp)?;
                components[sp.slot()] = Some(PulseComponent {
                    rates,
                    rho_max: peak_from_mass(m, &rates),
                    mass: m,
                });
            }
        }
        if components.iter().all(Option::is_none) {
            return Err(Error::invalid("M_total", "at least one mass must be positive"));
        }
        Ok(Self {
            sigma,
            ds: params.ds,
            alpha: params.alpha,
            components,
        })
    }

    /// Pulse for a mixture in which species 2 makes up `phi_red` of
    /// `total_mass`, in the caller's labelling.
    ///
    /// Returns `Ok(None)` when the fraction lies beyond the critical one.
    pub fn from_fraction(params: &PhysicalParams, phi_red: f64, total_mass: f64) -> Result<Option<Self>> {
        if !(0.0..=1.0).contains(&phi_red) {
            return Err(Error::invalid(
                "phi_red",
                format!("must lie in [0, 1], got {phi_red}"),
            ));
        }
        let (m1, m2) = ((1.0 - phi_red) * total_mass, phi_red * total_mass);
        if phi_red == 0.0 || phi_red == 1.0 {
            let sp = if phi_red == 0.0 { Species::One } else { Species::Two };
            let sigma = species_speed(params, sp)?;
            return Self::new(params, sigma, m1, m2).map(Some);
        }
        let bif = phi_star(params)?;
        let phi_fast = if bif.admissibility.relabeled { 1.0 - phi_red } else { phi_red };
        match bif.sigma_two(phi_fast)? {
            TwoSpeciesSpeed::Pulse { sigma, .. } => Self::new(params, sigma, m1, m2).map(Some),
            TwoSpeciesSpeed::NoPulse { .. } => Ok(None),
        }
    }

    pub fn component(&self, species: Species) -> Option<&PulseComponent> {
        self.components[species.slot()].as_ref()
    }

    /// Fraction of the total mass carried by species 2.
    pub fn phi_red(&self) -> f64 {
        let m = |s: Species| self.component(s).map_or(0.0, |c| c.mass);
        m(Species::Two) / (m(Species::One) + m(Species::Two))
    }

    pub fn kernel_root(&self) -> f64 {
        (self.sigma * self.sigma + 4.0 * self.alpha * self.ds).sqrt()
    }

    /// Factor converting `K * rho` into the chemoattractant concentration.
    pub fn concentration_scale(&self) -> f64 {
        1.0 / self.kernel_root()
    }

    /// Growth rates of the kernel: `(r_plus, r_minus)` with `K = exp(r_plus z)`
    /// for `z < 0` and `K = exp(r_minus z)` for `z > 0`.
    fn kernel_rates(&self) -> (f64, f64) {
        let q = self.kernel_root();
        ((-self.sigma + q) / (2.0 * self.ds), (-self.sigma - q) / (2.0 * self.ds))
    }

    pub fn density(&self, species: Species, z: f64) -> f64 {
        self.component(species).map_or(0.0, |c| c.density(z))
    }

    /// `(K * (rho_1 + rho_2))(z)` in closed form.
    pub fn chemoattractant(&self, z: f64) -> f64 {
        let (rp, rm) = self.kernel_rates();
        self.components
            .iter()
            .flatten()
            .map(|c| c.rho_max * convolved_unit_pulse(z, c.rates, rp, rm))
            .sum()
    }
}

/// `(e^a - 1) / a`, continuous at 0.
fn exprel(a: f64) -> f64 {
    if a == 0.0 {
        1.0
    } else {
        a.exp_m1() / a
    }
}

/// `(e^{p z} - e^{q z}) / (p - q)` without cancellation near `p = q`.
fn exp_difference(p: f64, q: f64, z: f64) -> f64 {
    let a = (p - q) * z;
    if a.abs() < 1.0 {
        (q * z).exp() * z * exprel(a)
    } else {
        ((p * z).exp() - (q * z).exp()) / (p - q)
    }
}

/// Kernel convolved with a unit-peak two-sided exponential.
fn convolved_unit_pulse(z: f64, rates: DecayRates, rp: f64, rm: f64) -> f64 {
    let (lm, lp) = (rates.minus, rates.plus);
    if z <= 0.0 {
        // y < z: kernel branch exp(rm (z - y)); z < y < 0: exp(rp (z - y)); y > 0: exp(rp (z - y)).
        (lm * z).exp() / (lm - rm) - exp_difference(rp, lm, z) + (rp * z).exp() / (rp - lp)
    } else {
        // y < 0: exp(rm (z - y)); 0 < y < z: exp(rm (z - y)); y > z: exp(rp (z - y)).
        (rm * z).exp() / (lm - rm) + exp_difference(lp, rm, z) + (lp * z).exp() / (rp - lp)
    }
}

/// `K(z) = exp(-sigma z / (2 D_S) - sqrt(sigma^2 + 4 alpha D_S) |z| / (2 D_S))`.
pub fn kernel(z: f64, sigma: f64, ds: f64, alpha: f64) -> f64 {
    let q = (sigma * sigma + 4.0 * alpha * ds).sqrt();
    (-sigma * z / (2.0 * ds) - q * z.abs() / (2.0 * ds)).exp()
}

/// Sampled analytic profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct Profiles {
    pub z: Vec<f64>,
    pub rho1: Vec<f64>,
    pub rho2: Vec<f64>,
    pub s: Vec<f64>,
}

pub fn analytic_profiles(solution: &WaveSolution, z_grid: &[f64]) -> Profiles {
    Profiles {
        z: z_grid.to_vec(),
        rho1: z_grid.iter().map(|&z| solution.density(Species::One, z)).collect(),
        rho2: z_grid.iter().map(|&z| solution.density(Species::Two, z)).collect(),
        s: z_grid.iter().map(|&z| solution.chemoattractant(z)).collect(),
    }
}

/// One-sided contributions to `S'(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SPrime {
    /// Contribution of the kernel's `z < 0` branch (acting on the front flanks).
    pub minus: f64,
    /// Contribution of the kernel's `z > 0` branch (acting on the back flanks).
    pub plus: f64,
}

impl SPrime {
    pub fn total(&self) -> f64 {
        self.minus + self.plus
    }

    /// `|S'_-| + |S'_+|`, the natural scale for judging `S'(0) = 0`.
    pub fn scale(&self) -> f64 {
        self.minus.abs() + self.plus.abs()
    }
}

/// `S'(0) = S'_- + S'_+` of the convolution profile, in closed form.
pub fn sprime_at_zero(solution: &WaveSolution) -> SPrime {
    let (sigma, ds) = (solution.sigma, solution.ds);
    let q = solution.kernel_root();
    let mut out = SPrime { minus: 0.0, plus: 0.0 };
    for c in solution.components.iter().flatten() {
        out.minus += c.rho_max * (-sigma + q) / (-sigma + q - 2.0 * ds * c.rates.plus);
        out.plus += c.rho_max * (sigma + q) / (-sigma - q - 2.0 * ds * c.rates.minus);
    }
    out
}

/// `c_i = 4 (D_S / D_i) (chi_i^S sigma + (sigma - chi_i^N) sqrt(sigma^2 + 4 alpha D_S))`.
pub fn c_coefficient(params: &PhysicalParams, sigma: f64, species: Species) -> Result<f64> {
    let sp = params.species(species);
    check_admissible(&sp, species, sigma)?;
    let q = params.kernel_root(sigma);
    Ok(4.0 * params.ds / sp.d * (sp.chi_s * sigma + (sigma - sp.chi_n) * q))
}

/// `c_i` from the expanded products
/// `(-sigma + q)(-sigma - q - 2 D_S lambda^-) + (sigma + q)(-sigma + q - 2 D_S lambda^+)`.
pub fn c_coefficient_expanded(params: &PhysicalParams, sigma: f64, species: Species) -> Result<f64> {
    let sp = params.species(species);
    check_admissible(&sp, species, sigma)?;
    let rates = rates_unchecked(&sp, sigma);
    let (q, ds) = (params.kernel_root(sigma), params.ds);
    Ok((-sigma + q) * (-sigma - q - 2.0 * ds * rates.minus)
        + (sigma + q) * (-sigma + q - 2.0 * ds * rates.plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(sigma_shift: f64) -> (PhysicalParams, WaveSolution) {
        let p = PhysicalParams::table1();
        let s1 = species_speed(&p, Species::One).unwrap();
        (p, WaveSolution::new(&p, s1 + sigma_shift, 1.0, 0.0).unwrap())
    }

    #[test]
    fn kernel_is_positive_and_normalized() {
        let p = PhysicalParams::table1();
        assert_eq!(kernel(0.0, 2.4e-4, p.ds, p.alpha), 1.0);
        for k in -200..=200 {
            let z = k as f64 * 0.005;
            assert!(kernel(z, 2.4e-4, p.ds, p.alpha) > 0.0);
        }
    }

    #[test]
    fn density_peak_is_rho_max() {
        let (_, w) = single(0.0);
        let c = w.component(Species::One).unwrap();
        assert_eq!(w.density(Species::One, 0.0), c.rho_max);
        assert_eq!(w.density(Species::Two, 0.0), 0.0);
        assert!(w.component(Species::Two).is_none());
    }

    #[test]
    fn closed_form_matches_direct_quadrature() {
        // Composite Simpson on a fine grid, independent of the piecewise formulas.
        let (_, w) = single(0.0);
        let c = *w.component(Species::One).unwrap();
        let q = w.kernel_root();
        let ds = w.ds;
        let k = |x: f64| (-w.sigma * x / (2.0 * ds) - q * x.abs() / (2.0 * ds)).exp();
        for &z in &[-0.2, -0.05, -0.01, 0.0, 0.003, 0.04, 0.15] {
            let n = 400_000;
            let (a, b) = (-1.5, 1.5);
            let h = (b - a) / n as f64;
            let mut sum = 0.0;
            for i in 0..=n {
                let y = a + i as f64 * h;
                let wgt = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                sum += wgt * k(z - y) * c.density(y);
            }
            let quad = sum * h / 3.0;
            let exact = w.chemoattractant(z);
            assert!((quad - exact).abs() <= 1e-6 * exact, "z={z}: {quad} vs {exact}");
        }
    }

    #[test]
    fn scaled_profile_solves_traveling_ode() {
        // -sigma S' = D_S S'' - alpha S + rho away from the kink at z = 0.
        let (p, w) = single(0.0);
        let scale = w.concentration_scale();
        let s = |z: f64| scale * w.chemoattractant(z);
        let h = 1e-4;
        for &z in &[-0.1, -0.02, 0.02, 0.1] {
            let d1 = (s(z + h) - s(z - h)) / (2.0 * h);
            let d2 = (s(z + h) - 2.0 * s(z) + s(z - h)) / (h * h);
            let res = w.sigma * d1 + p.ds * d2 - p.alpha * s(z) + w.density(Species::One, z);
            assert!(res.abs() <= 1e-5 * w.density(Species::One, z), "z={z} res={res}");
        }
    }

    #[test]
    fn sprime_vanishes_at_single_species_speed() {
        let (_, w) = single(0.0);
        let sp = sprime_at_zero(&w);
        assert!(sp.total().abs() <= 1e-9 * sp.scale());
    }

    #[test]
    fn sprime_sign_off_speed() {
        // sigma above sigma_1: S'(0) has the sign of sigma_1 - sigma (negative),
        // checked against a centred difference of the closed-form profile.
        let p = PhysicalParams::table1();
        let width = p.species(Species::One).interval().width();
        let (_, w) = single(0.1 * width);
        let sp = sprime_at_zero(&w).total();
        let h = 1e-7;
        let fd = (w.chemoattractant(h) - w.chemoattractant(-h)) / (2.0 * h);
        assert!(sp < 0.0);
        assert!(fd < 0.0);
        assert!((fd - sp).abs() <= 1e-4 * sp.abs());
    }

    #[test]
    fn from_fraction_pure_cases() {
        let p = PhysicalParams::table1();
        let w = WaveSolution::from_fraction(&p, 0.0, 1.0).unwrap().unwrap();
        assert_eq!(w.sigma, species_speed(&p, Species::One).unwrap());
        let w = WaveSolution::from_fraction(&p, 1.0, 1.0).unwrap().unwrap();
        assert_eq!(w.sigma, species_speed(&p, Species::Two).unwrap());
        assert!(WaveSolution::from_fraction(&p, 0.9, 1.0).unwrap().is_none());
        assert!(WaveSolution::from_fraction(&p, 1.5, 1.0).is_err());
    }

    #[test]
    fn rejects_inadmissible_mixture() {
        let p = PhysicalParams::table1();
        // sigma_2 is outside I_1, so a pulse carrying both species cannot move at it.
        let s2 = species_speed(&p, Species::Two).unwrap();
        assert!(matches!(
            WaveSolution::new(&p, s2, 0.5, 0.5),
            Err(Error::Inadmissible { species: 1, .. })
        ));
        assert!(WaveSolution::new(&p, s2, 0.0, 0.0).is_err());
    }
}
