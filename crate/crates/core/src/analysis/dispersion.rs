//! One-species speed relation and exponential decay rates of a pulse.

use super::roots::bisect;
use crate::error::{Error, Result};
use crate::params::{PhysicalParams, Species, SpeciesParams};

/// Back (`minus`, positive) and front (`plus`, negative) exponential rates of
/// a pulse profile, in 1/cm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRates {
    pub minus: f64,
    pub plus: f64,
}

impl DecayRates {
    /// Characteristic width `1/lambda^- + 1/|lambda^+|` (cm).
    pub fn width(&self) -> f64 {
        1.0 / self.minus + 1.0 / self.plus.abs()
    }
}

fn check_non_negative(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::invalid(name, format!("must be finite and >= 0, got {v}")));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::invalid(name, format!("must be finite and > 0, got {v}")));
    }
    Ok(())
}

/// Residual `chi^N - sigma - chi^S sigma / sqrt(sigma^2 + 4 D_S alpha)`,
/// strictly decreasing in `sigma`.
pub fn single_species_residual(chi_s: f64, chi_n: f64, ds: f64, alpha: f64, sigma: f64) -> f64 {
    chi_n - sigma - chi_s * sigma / (sigma * sigma + 4.0 * ds * alpha).sqrt()
}

/// Traveling speed of a single population.
///
/// Solves `chi^N - sigma = chi^S sigma / sqrt(4 D_S alpha + sigma^2)` by
/// bisection on `(max(0, chi^N - chi^S), chi^N)`, refined to the resolution
/// of `f64`. `chi^N = 0` yields `sigma = 0` and `chi^S = 0` yields
/// `sigma = chi^N`.
pub fn sigma_single(chi_s: f64, chi_n: f64, ds: f64, alpha: f64) -> Result<f64> {
    check_non_negative("chiS", chi_s)?;
    check_non_negative("chiN", chi_n)?;
    check_positive("DS", ds)?;
    check_positive("alpha", alpha)?;
    if chi_n == 0.0 {
        return Ok(0.0);
    }
    if chi_s == 0.0 {
        return Ok(chi_n);
    }
    let lo = (chi_n - chi_s).max(0.0);
    bisect(
        |s| single_species_residual(chi_s, chi_n, ds, alpha, s),
        lo,
        chi_n,
    )
    .ok_or_else(|| Error::Numerical("speed residual has no sign change on its bracket".into()))
}

/// Pure-species speed of `species` under `params`.
pub fn species_speed(params: &PhysicalParams, species: Species) -> Result<f64> {
    let sp = params.species(species);
    sigma_single(sp.chi_s, sp.chi_n, params.ds, params.alpha)
}

/// `g_i(sigma) = (sigma - chi_i^N) + chi_i^S sigma / sqrt(sigma^2 + 4 alpha D_S)`.
pub fn g_value(params: &PhysicalParams, sp: &SpeciesParams, sigma: f64) -> f64 {
    (sigma - sp.chi_n) + sp.chi_s * sigma / params.kernel_root(sigma)
}

pub(crate) fn rates_unchecked(sp: &SpeciesParams, sigma: f64) -> DecayRates {
    DecayRates {
        minus: (sp.chi_n + sp.chi_s - sigma) / sp.d,
        plus: (sp.chi_n - sp.chi_s - sigma) / sp.d,
    }
}

pub(crate) fn check_admissible(sp: &SpeciesParams, species: Species, sigma: f64) -> Result<()> {
    let i = sp.interval();
    if i.contains_strictly(sigma) {
        Ok(())
    } else {
        Err(Error::Inadmissible {
            sigma,
            species: species.label(),
            lo: i.lo,
            hi: i.hi,
        })
    }
}

/// Exponential rates of the pulse of `species` travelling at `sigma`.
///
/// `sigma` must lie in the open interval `(chi^N - chi^S, chi^N + chi^S)`,
/// otherwise one flank would not decay.
pub fn lambda_pm(params: &PhysicalParams, sigma: f64, species: Species) -> Result<DecayRates> {
    let sp = params.species(species);
    check_admissible(&sp, species, sigma)?;
    Ok(rates_unchecked(&sp, sigma))
}
